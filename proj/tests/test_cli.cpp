#include <doctest.h>

#include <bit>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "antilinear/cli.hpp"
#include "antilinear/io.hpp"
#include "antilinear/jacobi.hpp"
#include "support.hpp"

using namespace antilinear;
using fixtures::near;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::string fixture(const char* name) { return slurp(std::filesystem::path(FIXTURE_DIR) / name); }

const char* kPair =
    R"({"schema":"measure","atoms":[{"point":{"re":1,"im":0},"weight":0.5},{"point":{"re":-1,"im":0},"weight":0.5}]})";

bool same_bits(double a, double b) { return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b); }

}  // namespace

TEST_CASE("parse_complex") {
  CHECK(cli::parse_complex("1") == cplx(1.0, 0.0));
  CHECK(cli::parse_complex("-2.5i") == cplx(0.0, -2.5));
  CHECK(cli::parse_complex("1+2i") == cplx(1.0, 2.0));
  CHECK(cli::parse_complex("3e-1-4i") == cplx(0.3, -4.0));
  CHECK(cli::parse_complex("1e+2") == cplx(100.0, 0.0));
  CHECK(cli::parse_complex("i") == cplx(0.0, 1.0));
  CHECK(cli::parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(cli::parse_complex(" 2 - 1.5i ") == cplx(2.0, -1.5));
  CHECK_THROWS_AS(cli::parse_complex("abc"), Error);
  CHECK_THROWS_AS(cli::parse_complex(""), Error);
  CHECK_THROWS_AS(cli::parse_complex("1+2j"), Error);
  CHECK(cli::parse_complex_list("").empty());
  CHECK(cli::parse_complex_list("1, 2i,-3").size() == 3);
  CHECK_THROWS_AS(cli::parse_complex_list("1,"), Error);
}

TEST_CASE("documents round-trip bit for bit") {
  fixtures::Rng rng(61);
  const BiradialMeasure rho = fixtures::random_measure(rng, 7);
  const PlanarAtomicMeasure back = io::measure_from_json(io::parse_document(io::dump_document(io::measure_to_json(rho))));
  REQUIRE(back.atoms.size() == rho.size());
  for (std::size_t k = 0; k < rho.size(); ++k) {
    CHECK(same_bits(back.atoms[k].point.real(), rho[k].point.real()));
    CHECK(same_bits(back.atoms[k].point.imag(), rho[k].point.imag()));
    CHECK(same_bits(back.atoms[k].weight, rho[k].weight));
  }

  const JacobiParams p = fixtures::random_jacobi(rng, 6);
  const JacobiParams q = io::jacobi_from_json(io::parse_document(io::dump_document(io::jacobi_to_json(p))));
  CHECK(max_param_difference(p, q) == 0.0);

  const CMatrix M = fixtures::random_matrix(rng, 4);
  CHECK((io::matrix_from_json(io::parse_document(io::dump_document(io::matrix_to_json(M)))) - M).norm() == 0.0);

  const MomentSequence m = measure_moments(rho, 9);
  const MomentSequence mb = io::moments_from_json(io::parse_document(io::dump_document(io::moments_to_json(m))));
  REQUIRE(mb.size() == m.size());
  for (std::size_t k = 0; k < m.size(); ++k) CHECK(mb[k] == m[k]);
}

TEST_CASE("fixture documents are reproduced exactly") {
  for (const auto& entry : std::filesystem::directory_iterator(FIXTURE_DIR)) {
    const std::string text = slurp(entry.path());
    CAPTURE(entry.path().string());
    CHECK(io::dump_document(io::parse_document(text)) == text);
  }
}

TEST_CASE("malformed documents are parse errors") {
  const auto kind = [](const std::string& text, auto reader) {
    try {
      reader(io::parse_document(text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  const auto measure = [](const io::Json& d) { io::measure_from_json(d); };
  const auto matrix = [](const io::Json& d) { io::matrix_from_json(d); };
  CHECK(kind("{", measure) == ErrorKind::ParseError);
  CHECK(kind(R"({"atoms":[]})", measure) == ErrorKind::ParseError);
  CHECK(kind(R"({"schema":"jacobi","alphas":[],"betas":[]})", measure) == ErrorKind::ParseError);
  CHECK(kind(R"({"schema":"measure","atoms":[{"point":{"re":1},"weight":1}]})", measure) == ErrorKind::ParseError);
  CHECK(kind(R"({"schema":"measure","atoms":[{"point":1,"weight":"x"}]})", measure) == ErrorKind::ParseError);
  CHECK(kind(R"({"schema":"matrix","rows":[[1,2],[3]]})", matrix) == ErrorKind::ParseError);
}

TEST_CASE("ortho") {
  Run r = run({"ortho"}, kPair);
  REQUIRE(r.code == 0);
  const JacobiParams p = io::jacobi_from_json(io::parse_document(r.out));
  CHECK(max_param_difference(p, {{0.0, 0.0}, {1.0}}) < 1e-14);
  CHECK(r.err.find("model residual") != std::string::npos);

  r = run({"ortho"}, R"({"schema":"measure","atoms":[{"point":{"re":0.5,"im":-2},"weight":1}]})");
  REQUIRE(r.code == 0);
  CHECK(near(io::jacobi_from_json(io::parse_document(r.out)).alphas.at(0), {0.5, -2.0}));

  r = run({"ortho"},
          R"({"schema":"measure","atoms":[{"point":1,"weight":0.3},{"point":{"re":0,"im":1},"weight":0.3},{"point":-1,"weight":0.4}]})");
  CHECK(r.code == 2);
  CHECK(r.err.find("ThreeOnCircle") != std::string::npos);
  CHECK(run({"ortho"}, "not json").code == 2);
}

TEST_CASE("recover") {
  Run r = run({"recover"}, R"({"schema":"jacobi","alphas":[0,0],"betas":[1]})");
  REQUIRE(r.code == 0);
  const BiradialMeasure m = canonicalize(io::measure_from_json(io::parse_document(r.out)));
  CHECK(are_equivalent(m, canonicalize(io::measure_from_json(io::parse_document(kPair)))));
  CHECK(r.err.find("round-trip parameter error") != std::string::npos);

  r = run({"recover"}, R"({"schema":"jacobi","alphas":[{"re":2,"im":1}],"betas":[]})");
  REQUIRE(r.code == 0);
  CHECK(near(io::measure_from_json(io::parse_document(r.out)).atoms.at(0).point, {2.0, 1.0}));

  r = run({"recover"}, R"({"schema":"jacobi","alphas":[0,0],"betas":[0]})");
  CHECK(r.code == 2);
  CHECK(r.err.find("krylov-decompose") != std::string::npos);
}

TEST_CASE("moments and psd") {
  Run r = run({"moments", "--order", "4"}, kPair);
  REQUIRE(r.code == 0);
  const MomentSequence m = io::moments_from_json(io::parse_document(r.out));
  REQUIRE(m.size() == 5);
  CHECK(near(m[2], 1.0));
  CHECK(near(m[3], 0.0));

  r = run({"psd", "--order", "3"}, kPair);
  REQUIRE(r.code == 0);
  io::Json rep = io::parse_document(r.out);
  CHECK(rep["psd"].get<bool>());
  CHECK(rep["min_eigenvalue"].get<double>() >= -1e-12);

  r = run({"psd", "--order", "1"}, kPair);
  REQUIRE(r.code == 0);
  CHECK(io::parse_document(r.out)["min_eigenvalue"].get<double>() == doctest::Approx(1.0));

  r = run({"psd", "--order", "2"}, R"({"schema":"moments","moments":[1,0,-1,0,1]})");
  CHECK(r.code == 4);
  CHECK_FALSE(io::parse_document(r.out)["psd"].get<bool>());
  CHECK(r.err.find("positive semidefinite") != std::string::npos);

  CHECK(run({"psd", "--order", "3"}, R"({"schema":"moments","moments":[1,0,1]})").code == 2);
}

TEST_CASE("fcalc and specmap") {
  const std::string swap = fixture("swap.json");
  Run r = run({"specmap", "--u", "0,1", "--v", ""}, swap);
  REQUIRE(r.code == 0);
  io::Json rep = io::parse_document(r.out);
  CHECK(rep["inclusion_violations"].get<int>() == 0);
  CHECK(rep["converse_violations"].get<int>() == 0);

  r = run({"fcalc", "--u", "0,1", "--v", ""}, swap);
  REQUIRE(r.code == 0);
  rep = io::parse_document(r.out);
  const CMatrix C = io::matrix_from_json(rep["C"]);
  const CMatrix A = io::matrix_from_json(rep["A"]);
  CHECK((C - CMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK(A.norm() < 1e-14);
  CHECK(rep["norm"].get<double>() == doctest::Approx(1.0));

  CHECK(run({"fcalc", "--u", "x"}, swap).code == 2);
  CHECK(run({"specmap"}, R"({"schema":"matrix","rows":[[0,1],[2,0]]})").code == 2);
}

TEST_CASE("gmres") {
  Run r = run({"gmres", "--demo", "staircase"});
  REQUIRE(r.code == 0);
  std::istringstream csv(r.out);
  std::string line;
  std::getline(csv, line);
  CHECK(line == "k,residual,ratio,flag");
  std::getline(csv, line);
  CHECK(line.rfind("0,", 0) == 0);
  std::getline(csv, line);
  CHECK(line.rfind("1,", 0) == 0);
  CHECK(line.find("stagnation") != std::string::npos);

  r = run({"gmres", "--demo", "staircase", "--circles", "0"});
  CHECK(r.code == 0);
  CHECK(r.out == "k,residual,ratio,flag\n");

  fixtures::Rng rng(62);
  const CMatrix M = CMatrix::Identity(6, 6) + fixtures::random_matrix(rng, 6, 0.2);
  r = run({"gmres", "--rhs", "1,2i,0,1-i,3,0.5"}, io::dump_document(io::matrix_to_json(M)));
  CHECK(r.code == 0);

  CHECK(run({"gmres", "--demo", "nope"}).code == 2);
  CHECK(run({"gmres", "--rhs", "0,0"}, R"({"schema":"matrix","rows":[[1,0],[0,1]]})").code == 2);
  CHECK(run({"gmres", "--rhs", "1,2,3"}, R"({"schema":"matrix","rows":[[1,0],[0,1]]})").code == 2);
}

TEST_CASE("equiv and symmetrize") {
  const std::string mixed = fixture("mixed_measure.json");
  Run r = run({"equiv", "--angles", "0"}, mixed);
  REQUIRE(r.code == 0);
  CHECK(r.out == mixed);

  const Run a = run({"equiv", "--seed", "7"}, mixed);
  const Run b = run({"equiv", "--seed", "7"}, mixed);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != mixed);
  CHECK(run({"equiv", "--seed", "8"}, mixed).out != a.out);
  CHECK(run({"equiv", "--angles", "0,1"}, mixed).code == 2);

  r = run({"symmetrize"},
          R"({"schema":"measure","atoms":[{"point":1,"weight":0.2},{"point":{"re":0,"im":1},"weight":0.3},{"point":-1,"weight":0.5}]})");
  REQUIRE(r.code == 0);
  const PlanarAtomicMeasure s = io::measure_from_json(io::parse_document(r.out));
  REQUIRE(s.atoms.size() == 2);
  CHECK(near(s.atoms[0].point, -s.atoms[1].point, 1e-14));
}

TEST_CASE("krylov-decompose") {
  Run r = run({"krylov-decompose"}, R"({"schema":"matrix","rows":[[1,0],[0,2]]})");
  REQUIRE(r.code == 0);
  const io::Json rep = io::parse_document(r.out);
  REQUIRE(rep["blocks"].size() == 2);
  CHECK(rep["blocks"][0]["dimension"].get<int>() == 1);
  CHECK(near(io::jacobi_from_json(rep["blocks"][1]["jacobi"]).alphas.at(0), 2.0));
}

TEST_CASE("files, help and argument errors") {
  const auto dir = std::filesystem::temp_directory_path() / "antilinear_cli_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "pair.json") << kPair;
  }
  Run r = run({"ortho", "--in", (dir / "pair.json").string(), "--out", (dir / "j.json").string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  CHECK(io::schema_of(io::parse_document(slurp(dir / "j.json"))) == "jacobi");
  CHECK(run({"ortho", "--in", (dir / "missing.json").string()}).code == 2);
  std::filesystem::remove_all(dir);

  CHECK(run({"--help"}).code == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"bogus"}).code == 2);
  CHECK(run({"psd", "--order", "abc"}, kPair).code == 2);
  CHECK(cli::exit_code(ErrorKind::Breakdown) == 3);
  CHECK(cli::exit_code(ErrorKind::ZeroFirstEntry) == 3);
  CHECK(cli::exit_code(ErrorKind::ThreeOnCircle) == 2);
}
