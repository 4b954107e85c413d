// End-to-end checks of the command-line tool: exit codes, output shape,
// determinism.  argv[1] = path to the binary, argv[2] = sample data directory.
#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

std::string g_bin, g_data, g_tmp;
int g_failures = 0;

struct RunResult {
  int code = -1;
  std::string out, err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  const std::string out_path = g_tmp + "/cli_out.txt";
  const std::string err_path = g_tmp + "/cli_err.txt";
  const std::string cmd = g_bin + " " + args + " >" + out_path + " 2>" + err_path;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

void check(bool ok, const std::string& what) {
  if (!ok) {
    ++g_failures;
    std::cerr << "FAIL: " << what << "\n";
  }
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

// Value of the token following `key` at the start of a line, or NaN.
double value_after(const std::string& text, const std::string& key) {
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream ls(line);
    std::string head;
    if (ls >> head && head == key) {
      double v;
      if (ls >> v) return v;
    }
  }
  return std::nan("");
}

int count_data_rows(const std::string& csv) {
  std::istringstream lines(csv);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line))
    if (!line.empty() && line[0] != '#' && line != "x,y") ++rows;
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: cli_integration <binary> <data-dir>\n";
    return 2;
  }
  g_bin = argv[1];
  g_data = argv[2];
  g_tmp = fs::temp_directory_path() / "ncdomain-cli-test";
  fs::create_directories(g_tmp);

  const std::string f = g_data + "/f.sym";
  const std::string g = g_data + "/g.sym";
  const std::string lin = g_data + "/linear.sym";
  const std::string tup = g_data + "/tuple.tup";

  {  // weight table: values, oracle column, determinism
    RunResult r = run("weights " + f + " --max-len 3");
    check(r.code == 0, "weights exit code");
    check(contains(r.out, "\ne 1\n"), "weights lists the empty word");
    check(contains(r.out, "\n12 2\n"), "weights b_12 = 2");
    check(contains(r.out, "\n21 1\n"), "weights b_21 = 1");
    RunResult r2 = run("weights " + f + " --max-len 3 --oracle");
    check(r2.code == 0, "weights --oracle exit code");
    check(contains(r2.out, "\n12 2 2\n"), "oracle column agrees");
    RunResult r3 = run("weights " + f + " --max-len 3");
    check(r.out == r3.out, "weights output is deterministic");
  }

  {  // error taxonomy
    check(run("weights " + g_data + "/no_such_file.sym --max-len 2").code == 66,
          "missing file exits 66");
    const std::string bad = g_tmp + "/bad.sym";
    std::ofstream(bad) << "n=2\n1 1\n2 -0.5\n";
    RunResult r = run("weights " + bad + " --max-len 2");
    check(r.code == 65, "invalid symbol exits 65");
    check(contains(r.err, "line 3"), "parse error names the line");
    check(run("").code == 64, "missing subcommand exits 64");
    check(run("frobnicate").code == 64, "unknown subcommand exits 64");
    check(run("norm " + f + " --word 12 --poly " + f).code == 64,
          "norm with two element sources exits 64");
    check(run("member " + f).code == 64, "member without tuple or point exits 64");
    check(run("weights " + f + " --max-len 13 --oracle").code == 65,
          "oracle beyond its cap exits 65");
  }

  {  // isomorphism front-end: obstruction for the standard pair, exit 2
    RunResult r = run("iso " + f + " " + g + " --dmax 2 --res 2001");
    check(r.code == 2, "iso obstructed pair exits 2");
    check(contains(r.out, "outcome Obstructed"), "iso reports Obstructed");
    check(contains(r.out, "collapse_match"), "iso reports the collapse comparison");
    check(contains(r.out, "violation_bound"), "iso reports a certified bound");
    RunResult r2 = run("iso " + f + " " + g + " --dmax 2 --res 2001");
    check(r.out == r2.out, "iso output is deterministic");
    RunResult same = run("iso " + f + " " + f + " --dmax 3 --res 2001");
    check(same.code == 0, "iso on an identical pair exits 0");
    check(contains(same.out, "outcome CandidateFound"), "identical pair yields a candidate");
    RunResult arity = run("iso " + f + " " + g_data + "/disk3.sym");
    check(arity.code == 65, "iso with mismatched arities exits 65");
  }

  {  // membership: scalar point and matrix tuple
    RunResult r = run("member " + f + " --point 0.6,0.6");
    check(r.code == 0, "member point exit code");
    check(contains(r.out, "status Interior"), "interior point classified");
    double margin = value_after(r.out, "margin");
    check(std::abs(margin - 0.1504) < 1e-12, "interior margin value");
    check(value_after(r.out, "route_gap") < 1e-12, "eigenvalue and scalar routes agree");
    RunResult out = run("member " + f + " --point 0.7,0.7");
    check(contains(out.out, "status Outside"), "outside point classified");
    RunResult t = run("member " + f + " --tuple " + tup);
    check(t.code == 0, "member tuple exit code");
    check(contains(t.out, "status Interior"), "sample tuple is interior");
  }

  {  // norms: closed formula vs numerical truncation
    RunResult r = run("norm " + f + " --word 12 --max-len 4 --numeric");
    check(r.code == 0, "norm exit code");
    double closed = value_after(r.out, "closed");
    check(std::abs(closed - 1.0 / std::sqrt(2.0)) < 1e-12, "closed monomial norm");
    check(value_after(r.out, "gap") < 1e-10, "numeric norm matches closed form");
    RunResult p = run("norm " + f + " --poly " + g_data + "/elem.poly --max-len 4");
    check(p.code == 0, "norm --poly exit code");
    check(std::abs(value_after(p.out, "closed") - std::sqrt(1.25)) < 1e-12,
          "closed norm of a homogeneous element");
  }

  {  // boundary slice: quarter circle for the linear symbol
    RunResult r = run("slice " + lin + " --res 11");
    check(r.code == 0, "slice exit code");
    check(contains(r.out, "# slice axes=1,2"), "slice header present");
    check(count_data_rows(r.out) == 11, "slice row count");
    std::istringstream lines(r.out);
    std::string line;
    bool found_origin = false;
    while (std::getline(lines, line)) {
      if (line.rfind("0,", 0) == 0) {
        found_origin = true;
        check(std::abs(std::strtod(line.c_str() + 2, nullptr) - 1.0) < 1e-9,
              "slice value at x = 0");
      }
    }
    check(found_origin, "slice contains the x = 0 sample");
  }

  {  // shift export round-trips through its own header
    const std::string out_path = g_tmp + "/shifts.txt";
    RunResult r = run("shifts " + f + " --max-len 2 --out " + out_path);
    check(r.code == 0, "shifts exit code");
    std::string text = slurp(out_path);
    check(contains(text, "7 2 2"), "shift header has dim n L");
    check(contains(text, "0.7071067811865476"), "shift entries carry the weight ratio");
  }

  {  // disk detection and Poisson kernel smoke checks
    RunResult d = run("disk " + g_data + "/disk3.sym");
    check(d.code == 0 && contains(d.out, "disk yes"), "degree-one symbol detected as a disk");
    RunResult nd = run("disk " + f);
    check(nd.code == 0 && contains(nd.out, "disk no"), "standard symbol is not a disk");
    RunResult p = run("poisson " + f + " --tuple " + tup + " --max-len 6");
    check(p.code == 0, "poisson exit code");
    check(contains(p.out, "rho_isometry"), "poisson reports the isometry defect");
    check(contains(p.out, "rho_intertwine"), "poisson reports the intertwining defect");
  }

  if (g_failures == 0) {
    std::cout << "cli integration: all checks passed\n";
    return 0;
  }
  std::cout << "cli integration: " << g_failures << " failing check(s)\n";
  return 1;
}
