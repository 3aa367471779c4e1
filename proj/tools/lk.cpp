#include "lk/calculus.hpp"
#include "lk/errors.hpp"
#include "lk/forest_io.hpp"
#include "lk/homology.hpp"
#include "lk/intersection_form.hpp"
#include "lk/lattice.hpp"
#include "lk/report.hpp"
#include "lk/verify.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

enum Exit { kOk = 0, kNegative = 1, kInput = 2, kSuiteFailed = 3, kCap = 4 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Negative definite plumbed forests, their blow-up calculus and knot lattice complexes"};
  app.require_subcommand(1);

  std::string file, file_b, kind, suite = "d_squared";
  std::vector<std::string> site;
  int margin = 1, ucap = 3, instances = 25, max_framed = 0;
  std::uint64_t seed = 1;
  bool json = false;

  auto* check = app.add_subcommand("check", "Test negative definiteness (exit 0 if definite, 1 if not)");
  check->add_option("FILE", file, "forest document")->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "Print the reduced form");
  reduce_cmd->add_option("FILE", file, "forest document")->required();

  auto* equiv = app.add_subcommand("equiv", "Decide equivalence (exit 0 if equivalent, 1 if not)");
  equiv->add_option("A", file, "first forest")->required();
  equiv->add_option("B", file_b, "second forest")->required();

  auto* move = app.add_subcommand("move", "Apply one blow-up or blow-down and print the result");
  move->add_option("FILE", file, "forest document")->required();
  move->add_option("--kind", kind, "generic, vertex, edge or down")
      ->required()
      ->check(CLI::IsMember({"generic", "vertex", "edge", "down"}));
  move->add_option("--site", site, "vertex id, or two ids for an edge");

  auto* verify = app.add_subcommand("verify", "Run a verification suite (exit 3 if it fails)");
  verify->add_option("--suite", suite, "suite name")->check(CLI::IsMember(lk::suite_names()));
  verify->add_option("--instances", instances, "random instances")->check(CLI::NonNegativeNumber);
  verify->add_option("--margin", margin, "box margin B")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed, "base seed");
  verify->add_option("--max-framed", max_framed, "framed vertices per instance (0 = suite default)");
  verify->add_option("--ucap", ucap, "U cap for fingerprint_invariance")->check(CLI::PositiveNumber);
  verify->add_flag("--json", json, "emit JSON");

  auto* homology = app.add_subcommand("homology", "Truncated homology by spin^c class and grading");
  homology->add_option("FILE", file, "forest document")->required();
  homology->add_option("--margin", margin, "box margin B")->check(CLI::NonNegativeNumber);
  homology->add_option("--ucap", ucap, "U cap N")->check(CLI::PositiveNumber);
  homology->add_flag("--json", json, "emit JSON");

  auto* filtration = app.add_subcommand("filtration", "Filtration profile by spin^c class, grading and alpha level");
  filtration->add_option("FILE", file, "forest document")->required();
  filtration->add_option("--margin", margin, "box margin B")->check(CLI::NonNegativeNumber);
  filtration->add_option("--ucap", ucap, "U cap N")->check(CLI::PositiveNumber);
  filtration->add_flag("--json", json, "emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInput;
  }

  lk::apply_thread_limit();
  try {
    if (*check) {
      const auto forest = lk::read_forest_file(file);
      const bool definite = lk::is_negative_definite(forest);
      std::cout << (definite ? "negative definite" : "not negative definite") << "\n";
      return definite ? kOk : kNegative;
    }
    if (*reduce_cmd) {
      std::cout << lk::emit_forest(lk::reduce(lk::read_forest_file(file)));
      return kOk;
    }
    if (*equiv) {
      const auto a = lk::reduce(lk::read_forest_file(file)), b = lk::reduce(lk::read_forest_file(file_b));
      if (lk::canonical_form(a) == lk::canonical_form(b)) {
        std::cout << "equivalent\n" << lk::emit_forest(a);
        return kOk;
      }
      std::cout << "not equivalent\n# reduced A\n" << lk::emit_forest(a) << "# reduced B\n" << lk::emit_forest(b);
      return kNegative;
    }
    if (*move) {
      const auto forest = lk::read_forest_file(file);
      const std::size_t need = kind == "generic" ? 0 : kind == "edge" ? 2 : 1;
      if (site.size() != need) {
        std::cerr << "error: --kind " << kind << " takes " << need << " site id(s)\n";
        return kInput;
      }
      lk::MoveResult r;
      if (kind == "generic") r = lk::blow_up_generic(forest);
      if (kind == "vertex") r = lk::blow_up_vertex(forest, site[0]);
      if (kind == "edge") r = lk::blow_up_edge(forest, site[0], site[1]);
      if (kind == "down") r = lk::blow_down(forest, site[0]);
      std::cout << lk::emit_forest(r.forest);
      return kOk;
    }
    if (*verify) {
      lk::SuiteOptions options;
      options.instances = instances;
      options.margin = margin;
      options.seed = seed;
      options.max_framed = max_framed;
      options.ucap = ucap;
      const auto report = lk::run_suite(suite, options);
      if (json)
        std::cout << lk::to_json(report).dump(2) << "\n";
      else
        std::cout << lk::to_text(report);
      const bool capped = std::any_of(report.failures.begin(), report.failures.end(), [](const lk::Failure& f) {
        return f.got.find("stabilization cap") != std::string::npos;
      });
      if (report.passed()) return kOk;
      return capped ? kCap : kSuiteFailed;
    }
    if (*homology || *filtration) {
      const lk::Lattice lattice(lk::read_forest_file(file));
      const auto [hom, prof] = lk::homology_and_profile(lattice, margin, ucap);
      if (*homology)
        std::cout << (json ? lk::to_json(hom).dump(2) + "\n" : lk::to_text(hom));
      else
        std::cout << (json ? lk::to_json(prof).dump(2) + "\n" : lk::to_text(prof));
      return kOk;
    }
  } catch (const lk::StabilizationCapError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCap;
  } catch (const lk::DefinitenessError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  } catch (const lk::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInput;
  } catch (const lk::StructureError& e) {
    std::cerr << "invalid forest: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kOk;
}
