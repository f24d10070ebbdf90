// Command line driver: verification batches, constants, inversion, spectral
// bounds, Mellin transforms and the ax+b constants, all as JSON on stdout.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include <gradalg/gradalg.hpp>

namespace {

using gradalg::AlgebraKind;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kMathFailure = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

AlgebraKind algebra_from(const std::string& name) {
  const auto k = gradalg::parse_algebra_kind(name);
  if (!k || *k == AlgebraKind::Custom) {
    throw UsageError("unknown algebra '" + name + "' (germs | kondratiev | free-kondratiev | sprime)");
  }
  return *k;
}

gradalg::GradedElement load_element(const std::string& path, const gradalg::FamilyPtr& fam) {
  std::ifstream in(path);
  if (!in) {
    throw UsageError("cannot open element file '" + path + "'");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed JSON in '") + path + "': " + e.what());
  }
  try {
    return gradalg::element_from_json(j, fam);
  } catch (const gradalg::ParseError& e) {
    throw UsageError(e.what());
  } catch (const json::exception& e) {
    throw UsageError(e.what());
  }
}

void emit(const json& doc, const std::string& output) {
  const std::string text = doc.dump(2) + "\n";
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) {
    throw UsageError("cannot write '" + output + "'");
  }
  out << text;
}

std::optional<std::uint64_t> seed_from_env() {
  const char* s = std::getenv("GRADALG_SEED");
  if (s == nullptr || *s == '\0') {
    return std::nullopt;
  }
  try {
    std::size_t pos = 0;
    const auto v = std::stoull(s, &pos);
    if (pos != std::string(s).size()) {
      throw UsageError("GRADALG_SEED is not an integer");
    }
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("GRADALG_SEED is not an integer");
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strong convolution algebras: verification and functional calculus"};
  app.require_subcommand(1);

  std::string algebra;
  std::string output;

  gradalg::RunConfig cfg;
  auto* verify = app.add_subcommand("verify", "check the two-level norm inequality on random pairs");
  verify->add_option("--algebra", algebra, "germs | kondratiev | free-kondratiev | sprime")->required();
  verify->add_option("--qmax", cfg.q_max, "largest level q in the grid");
  verify->add_option("--poffset", cfg.p_offset, "p ranges up to q + poffset");
  verify->add_option("--samples", cfg.samples, "random (f, g) pairs");
  verify->add_option("--seed", cfg.seed, "random seed (GRADALG_SEED overrides)");
  verify->add_option("--max-support", cfg.max_support, "largest support of a random element");
  verify->add_option("--output,-o", output, "report file (default stdout)");

  int p = 0;
  int q = 0;
  auto* constants = app.add_subcommand("constants", "coupling constant A_{p,q} as JSON");
  constants->add_option("--algebra", algebra)->required();
  constants->add_option("--p", p)->required();
  constants->add_option("--q", q)->required();

  std::string element_path;
  std::size_t order = 10;
  int scan = 20;
  auto* invert = app.add_subcommand("invert", "certified inverse of an element");
  invert->add_option("--algebra", algebra)->required();
  invert->add_option("--element", element_path, "JSON element file")->required();
  invert->add_option("--N", order, "truncation order");
  invert->add_option("--scan", scan, "largest level searched");

  auto* spectrum = app.add_subcommand("spectrum", "spectral enclosure radius");
  spectrum->add_option("--algebra", algebra)->required();
  spectrum->add_option("--element", element_path)->required();
  spectrum->add_option("--scan", scan);

  std::string function = "floor";
  double s = -2.0;
  gradalg::QuadratureSpec quad{1e-10, 1e6};
  auto* mellin = app.add_subcommand("mellin", "one-sided Mellin transform int_1^inf x^s f(x) dx/x");
  mellin->add_option("--function", function, "floor | totient | one")->check(CLI::IsMember({"floor", "totient", "one"}));
  mellin->add_option("--s", s);
  mellin->add_option("--cutoff", quad.cutoff);
  mellin->add_option("--tol", quad.abs_tol);

  int m = 1;
  auto* axb = app.add_subcommand("axb", "coupling integrals of the ax+b semigroup");
  axb->add_option("--m", m, "level gap p - q")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (verify->parsed()) {
      cfg.algebra = algebra_from(algebra);
      if (const auto env = seed_from_env()) {
        cfg.seed = *env;
      }
      const auto outcome = gradalg::run_verify(cfg);
      emit(outcome.document, output);
      return outcome.exit_code;
    }
    if (constants->parsed()) {
      const auto fam = gradalg::family(algebra_from(algebra));
      std::cout << gradalg::to_json(gradalg::coupling(*fam, p, q)).dump() << "\n";
      return kOk;
    }
    if (invert->parsed()) {
      const auto fam = gradalg::family(algebra_from(algebra));
      const auto f = load_element(element_path, fam);
      try {
        const auto r = gradalg::invert(f, order, scan);
        json doc{{"schema", gradalg::kSchema},
                 {"command", "invert"},
                 {"algebra", algebra},
                 {"element", gradalg::to_json(r.value)},
                 {"certificate", gradalg::to_json(r.certificate)},
                 {"contraction", r.contraction},
                 {"inverse_norm_bound", r.inverse_norm_bound},
                 {"distance_bound", r.distance_bound}};
        emit(doc, "");
        return kOk;
      } catch (const gradalg::NotInvertible& e) {
        std::cerr << "not invertible: " << e.what() << "\n";
        return kMathFailure;
      } catch (const gradalg::Inconclusive& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kMathFailure;
      }
    }
    if (spectrum->parsed()) {
      const auto fam = gradalg::family(algebra_from(algebra));
      const auto a = load_element(element_path, fam);
      emit({{"schema", gradalg::kSchema},
            {"command", "spectrum"},
            {"algebra", algebra},
            {"scan", scan},
            {"radius_bound", gradalg::spectrum_radius_bound(a, scan)}},
           "");
      return kOk;
    }
    if (mellin->parsed()) {
      json doc{{"schema", gradalg::kSchema}, {"command", "mellin"}, {"function", function}, {"s", s}};
      gradalg::QuadResult r;
      if (function == "one") {
        r = gradalg::mellin(gradalg::HalfLineFunction::constant(1.0), s, quad);
      } else {
        const auto kind =
            function == "floor" ? gradalg::SummatoryKind::Floor : gradalg::SummatoryKind::TotientSummatory;
        const gradalg::SummatoryFunction A(kind, static_cast<std::size_t>(quad.cutoff) + 1);
        r = gradalg::mellin(A.as_function(), s, quad);
        // -s M(-s) reproduces the Dirichlet series at -s
        const double t = -s;
        const auto d = gradalg::dirichlet_series(kind, t);
        doc["dirichlet"] = {{"t", t}, {"t_times_mellin", t * r.value}, {"series", d.mid()}, {"series_radius", d.radius()}};
      }
      doc["value"] = r.value;
      doc["error"] = r.error;
      emit(doc, "");
      return kOk;
    }
    if (axb->parsed()) {
      const auto c = gradalg::axb_constants(m);
      emit({{"schema", gradalg::kSchema},
            {"command", "axb"},
            {"m", m},
            {"left", c.left},
            {"right", c.right},
            {"left_quadrature", {{"value", c.left_quadrature.value}, {"error", c.left_quadrature.error}}},
            {"right_quadrature", {{"value", c.right_quadrature.value}, {"error", c.right_quadrature.error}}}},
           "");
      return kOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const gradalg::ConfigError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kUsage;
  } catch (const gradalg::LevelGapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const gradalg::NotStrongAlgebra& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMathFailure;
  } catch (const gradalg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMathFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
