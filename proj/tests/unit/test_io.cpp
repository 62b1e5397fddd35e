#include <doctest.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "gen.hpp"
#include "snforge/error.hpp"
#include "snforge/recheck.hpp"
#include "snforge/serialize.hpp"

using namespace snforge;
using snforge::testing::Gen;
using snforge::testing::kQ;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("snforge-io-" + std::to_string(::getpid()) + "-" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "snforge");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string problems_dir() { return SNFORGE_PROBLEMS_DIR; }

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("problem files round trip byte for byte after canonicalization") {
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(problems_dir())) {
      if (entry.path().extension() != ".json") continue;
      const io::json j = io::json::parse(slurp(entry.path().string()));
      if (j.contains("S") && j["S"].value("family", "") == "free_algebra") continue;
      INFO(entry.path().string());
      const io::Problem p = io::problem_from_json(j);
      const std::string once = io::canonical_dump(io::problem_to_json(p));
      const std::string twice = io::canonical_dump(io::problem_to_json(io::problem_from_json(io::json::parse(once))));
      REQUIRE(once == twice);
      ++seen;
    }
    CHECK(seen >= 8);
  }

  TEST_CASE("element and algebra formats round trip") {
    Gen g(61);
    for (const RingPtr& s : {Ring::field(kQ), Ring::polynomial(kQ, 3), Ring::curve(kQ), Ring::series(Ring::field(kQ), 4),
                             Ring::product(Ring::field(kQ), Ring::polynomial(kQ, 1)),
                             Ring::findim(upper_triangular_algebra(kQ, 2)), Ring::matrix(Ring::polynomial(kQ, 1), 2),
                             Ring::polynomial(Field::prime(10007), 2)}) {
      INFO(s->name());
      const RingPtr back = io::ring_from_json(io::ring_to_json(s));
      REQUIRE(back->same_as(*s));
      for (int i = 0; i < 50; ++i) {
        const RingElement x = g.element(s);
        REQUIRE(io::element_from_json(s, io::element_to_json(x)) == x);
      }
    }
    for (const AlgebraPtr& a : {matrix_algebra(kQ, 3), quaternion_algebra(FieldElement(kQ, -1L), FieldElement(kQ, 3L)),
                                upper_triangular_algebra(kQ, 3), g.findim_algebra(kQ, 5),
                                tensor_product(matrix_algebra(kQ, 2), diagonal_algebra(kQ, 2))}) {
      const AlgebraPtr back = io::algebra_from_json(io::algebra_to_json(a));
      REQUIRE(back->dense_table() == a->dense_table());
      REQUIRE(back->unit() == a->unit());
    }
  }

  TEST_CASE("malformed problems name the JSON pointer of the fault") {
    const io::json base = io::json::parse(slurp(problems_dir() + "/identity-m2-rationals.json"));
    auto error_of = [](const io::json& j) -> std::string {
      try {
        io::problem_from_json(j);
      } catch (const InputError& e) {
        return e.what();
      }
      return "";
    };
    io::json extra = base;
    extra["colour"] = "red";
    CHECK(error_of(extra).find("/colour") != std::string::npos);
    io::json bad_scalar = base;
    bad_scalar["images"][2][1] = "1/0";
    CHECK(error_of(bad_scalar).find("/images/2/1") != std::string::npos);
    io::json short_image = base;
    short_image["images"][0].erase(3);
    CHECK(error_of(short_image).find("/images/0") != std::string::npos);
    io::json bad_task = base;
    bad_task["task"] = "recheck";
    CHECK(error_of(bad_task).find("/task") != std::string::npos);
    io::json bad_schema = base;
    bad_schema["schema"] = "snforge-problem/0";
    CHECK(error_of(bad_schema).find("/schema") != std::string::npos);
    io::json bad_field = base;
    bad_field["S"]["field"] = "F_10";
    CHECK_FALSE(error_of(bad_field).empty());
  }

  TEST_CASE("squarefree square roots") {
    Gen g(62);
    for (Field f : {kQ, Field::prime(10007)}) {
      for (int i = 0; i < 100; ++i) {
        const Poly p = g.nonzero_poly(f, 1, 3);
        const FieldElement c = g.nonzero_scalar(f);
        const auto r = squarefree_square_root((p * p).scaled(c));
        REQUIRE(r.has_value());
        REQUIRE(*r == p.monic());
        // x * p^2 is never a constant times a square.
        REQUIRE_FALSE(squarefree_square_root(p * p * Poly::variable(f, 1, 0)).has_value());
      }
    }
  }

  TEST_CASE("exit codes of the problem commands") {
    TempDir tmp;
    const Run id = run_cli({"solve", problems_dir() + "/identity-m2-rationals.json", "-o", tmp.file("id.json")});
    CHECK(id.code == 0);
    const io::json cert = io::json::parse(slurp(tmp.file("id.json")));
    // c = lambda (1 (x) 1).
    const auto& c = cert.at("conjugator");
    CHECK(c[0] == c[3]);
    CHECK(c[1] == "0");
    CHECK(c[2] == "0");
    CHECK(c[0] != "0");

    const Run neg = run_cli({"solve", problems_dir() + "/elliptic-counterexample.json", "-o", tmp.file("e.json")});
    CHECK(neg.code == 2);
    CHECK(neg.out.find("det(a) = x") != std::string::npos);

    const Run fa = run_cli({"solve", problems_dir() + "/free-algebra.json"});
    CHECK(fa.code == 3);
    CHECK(fa.err.find("Sylvester") != std::string::npos);

    CHECK(run_cli({"solve", tmp.file("missing.json")}).code == 1);
    CHECK(run_cli({"solve", problems_dir() + "/not-a-hom.json"}).code == 1);
    CHECK(run_cli({"flip-check", problems_dir() + "/flip-upper-triangular.json", "-o", tmp.file("f.json")}).code == 2);
    CHECK(run_cli({"flip-check", problems_dir() + "/flip-m2.json", "-o", tmp.file("g.json")}).code == 0);
    CHECK(run_cli({"derivation", problems_dir() + "/flip-m2.json"}).code == 1);
    CHECK(run_cli({"solve"}).code == 1);
    CHECK(run_cli({"bogus"}).code == 1);
    CHECK(run_cli({"--help"}).code == 0);
    CHECK(run_cli({"schema", "certificate"}).code == 0);
    CHECK(run_cli({"solve", problems_dir() + "/unipotent-poly.json", "--backend", "findim"}).code == 3);
    CHECK(run_cli({"solve", problems_dir() + "/unipotent-poly.json", "--trials", "0"}).code == 1);
  }

  TEST_CASE("exit code is a function of the certificate status") {
    CHECK(cli::exit_code(Status::Inner) == 0);
    CHECK(cli::exit_code(Status::NotInner) == 2);
    CHECK(cli::exit_code(Status::Unsupported) == 3);
    CHECK(cli::exit_code(Status::Exhausted) == 3);
  }

  TEST_CASE("recheck accepts genuine certificates and rejects tampering") {
    TempDir tmp;
    for (const std::string name : {"unipotent-poly", "series-lift", "aut-decompose", "derivation-m2", "flip-m2",
                                   "elliptic-counterexample", "identity-m2-rationals"}) {
      INFO(name);
      const std::string problem = problems_dir() + "/" + name + ".json";
      const std::string cert = tmp.file(name + ".cert.json");
      std::string cmd = "solve";
      const std::string task = io::json::parse(slurp(problem)).at("task");
      if (task != "solve") cmd = task;
      const Run solved = run_cli({cmd, problem, "-o", cert});
      REQUIRE((solved.code == 0 || solved.code == 2));
      CHECK(run_cli({"recheck", problem, cert}).code == 0);
    }

    // One coordinate of c^-1 corrupted.
    const std::string problem = problems_dir() + "/unipotent-poly.json";
    io::json cert = io::json::parse(slurp(tmp.file("unipotent-poly.cert.json")));
    cert["inverse"][1] = "-x + 1";
    spit(tmp.file("bad-inverse.json"), io::canonical_dump(cert));
    const Run bad = run_cli({"recheck", problem, tmp.file("bad-inverse.json")});
    CHECK(bad.code == 4);
    CHECK(bad.err.find("recheck failed") != std::string::npos);

    // A certificate replayed against a different problem.
    const Run cross = run_cli({"recheck", problems_dir() + "/identity-m2-rationals.json", tmp.file("unipotent-poly.cert.json")});
    CHECK(cross.code == 4);

    // A transcript line edited after the fact.
    io::json edited = io::json::parse(slurp(tmp.file("unipotent-poly.cert.json")));
    edited["transcript"][0] = "trust me";
    spit(tmp.file("edited.json"), io::canonical_dump(edited));
    CHECK(run_cli({"recheck", problem, tmp.file("edited.json")}).code == 4);

    // A refutation that claims the wrong determinant.
    io::json flipped = io::json::parse(slurp(tmp.file("elliptic-counterexample.cert.json")));
    flipped["curve"]["delta"] = "x^2";
    spit(tmp.file("flipped.json"), io::canonical_dump(flipped));
    CHECK(run_cli({"recheck", problems_dir() + "/elliptic-counterexample.json", tmp.file("flipped.json")}).code == 4);

    // Not JSON at all.
    spit(tmp.file("garbage.json"), "{");
    CHECK(run_cli({"recheck", problem, tmp.file("garbage.json")}).code == 1);
  }

  TEST_CASE("every coordinate mutation of a certificate is caught") {
    TempDir tmp;
    const std::string problem = problems_dir() + "/unipotent-poly.json";
    REQUIRE(run_cli({"solve", problem, "-o", tmp.file("c.json")}).code == 0);
    const io::json cert = io::json::parse(slurp(tmp.file("c.json")));
    const io::Problem p = io::problem_from_json(io::json::parse(slurp(problem)));
    for (const std::string key : {"conjugator", "inverse"})
      for (std::size_t i = 0; i < cert.at(key).size(); ++i) {
        io::json m = cert;
        m[key][i] = m[key][i].get<std::string>() + " + x^5";
        CHECK_FALSE(recheck(p, m).ok);
      }
  }

  TEST_CASE("seed resolution order") {
    io::Problem p;
    cli::Options opts;
    ::unsetenv("SNFORGE_SEED");
    CHECK(cli::resolve_seed(opts, p) == 0);
    ::setenv("SNFORGE_SEED", "17", 1);
    CHECK(cli::resolve_seed(opts, p) == 17);
    p.seed = 5;
    CHECK(cli::resolve_seed(opts, p) == 5);
    opts.seed = 9;
    CHECK(cli::resolve_seed(opts, p) == 9);
    ::setenv("SNFORGE_SEED", "seventeen", 1);
    p.seed.reset();
    opts.seed.reset();
    CHECK_THROWS_AS(cli::resolve_seed(opts, p), InputError);
    ::unsetenv("SNFORGE_SEED");
  }

  TEST_CASE("certificates are written atomically") {
    TempDir tmp;
    const std::string target = tmp.file("out.json");
    cli::write_atomic(target, "first\n");
    cli::write_atomic(target, "second\n");
    CHECK(slurp(target) == "second\n");
    std::size_t files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(tmp.path)) ++files;
    CHECK(files == 1);
    CHECK_THROWS_AS(cli::write_atomic(tmp.file("no/such/dir/x.json"), "x"), InputError);
  }

  TEST_CASE("demos run, write their files and recheck") {
    TempDir tmp;
    for (const auto& name : cli::demo_names()) {
      INFO(name);
      const Run r = run_cli({"demo", name, "-o", tmp.path.string()});
      CHECK(r.code == (name == "elliptic-counterexample" ? 2 : 0));
      CHECK(fs::exists(tmp.file(name + ".problem.json")));
      CHECK(run_cli({"recheck", tmp.file(name + ".problem.json"), tmp.file(name + ".certificate.json")}).code == 0);
    }
    const Run unknown = run_cli({"demo", "no-such-demo"});
    CHECK(unknown.code == 1);
    CHECK(unknown.err.find("series-lift") != std::string::npos);
    const Run series = run_cli({"demo", "series-lift", "-o", tmp.path.string()});
    CHECK(series.out.find("byte-identical") != std::string::npos);
  }
}
