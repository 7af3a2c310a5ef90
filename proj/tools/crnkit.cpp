// crnkit command-line interface.
//
// Exit codes: 0 success / positive answer, 2 negative answer (not
// equivalent, no WR0 realization, aborted simulation), 1 parse or
// validation error, 3 internal invariant violation.

#include "crnkit/errors.hpp"
#include "crnkit/io.hpp"
#include "crnkit/report.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNegative = 2;
constexpr int kInvariant = 3;

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

int main(int argc, char** argv) {
  using namespace crnkit;

  CLI::App app{"crnkit: deficiency analysis, dynamical equivalence and WR0 realizations of mass-action systems"};
  app.require_subcommand(1);
  bool json_output = false;
  app.add_flag("--json", json_output, "Emit JSON instead of text");
  auto format = [&] { return json_output ? ReportFormat::Json : ReportFormat::Text; };

  std::string path_a, path_b;
  std::vector<std::string> on;
  std::size_t max_vertices = default_certify_cap;
  std::vector<double> x0, ref;
  double dt = 1e-3;
  std::size_t steps = 1000;
  std::size_t record_every = 0;
  std::size_t gen_species = 1, gen_classes = 1;
  std::vector<std::size_t> gen_sizes{2};
  std::uint64_t seed = 0;

  auto* analyze_cmd = app.add_subcommand("analyze", "Linkage classes, weak reversibility and deficiency");
  analyze_cmd->add_option("network", path_a, ".crn file")->required()->check(CLI::ExistingFile);

  auto* equiv_cmd = app.add_subcommand("equiv", "Test dynamical equivalence of two networks");
  equiv_cmd->add_option("first", path_a, ".crn file")->required()->check(CLI::ExistingFile);
  equiv_cmd->add_option("second", path_b, ".crn file")->required()->check(CLI::ExistingFile);
  equiv_cmd->add_option("--on", on, "Restrict to these complexes, e.g. --on \"2 X + 2 Y\" 0");

  auto* netvec_cmd = app.add_subcommand("netvec", "Net reaction vectors and the induced ODE");
  netvec_cmd->add_option("network", path_a, ".crn file")->required()->check(CLI::ExistingFile);

  auto* realize_cmd = app.add_subcommand("realize", "Find the WR0 realization of a polynomial system");
  realize_cmd->add_option("system", path_a, ".ode file")->required()->check(CLI::ExistingFile);

  auto* certify_cmd = app.add_subcommand("certify", "Exhaustively count WR0 realizations");
  certify_cmd->add_option("system", path_a, ".ode file")->required()->check(CLI::ExistingFile);
  certify_cmd->add_option("--max-vertices", max_vertices, "Refuse inputs with more monomials than this")
      ->capture_default_str();

  auto* simulate_cmd = app.add_subcommand("simulate", "Integrate the mass-action ODE with fixed-step RK4");
  simulate_cmd->add_option("network", path_a, ".crn file")->required()->check(CLI::ExistingFile);
  simulate_cmd->add_option("--x0", x0, "Initial state, comma separated")->required()->delimiter(',');
  simulate_cmd->add_option("--dt", dt, "Step size")->capture_default_str();
  simulate_cmd->add_option("--steps", steps, "Number of steps")->capture_default_str();
  simulate_cmd->add_option("--ref", ref, "Positive steady state for Lyapunov sampling")->delimiter(',');
  simulate_cmd->add_option("--record-every", record_every, "Store every k-th state (default: about 100 samples)");

  auto* generate_cmd = app.add_subcommand("generate", "Print a random WR0 network in .crn format");
  generate_cmd->add_option("--species", gen_species, "Number of species")->capture_default_str();
  generate_cmd->add_option("--classes", gen_classes, "Number of linkage classes")->capture_default_str();
  generate_cmd->add_option("--sizes", gen_sizes, "Vertices per class, comma separated")->delimiter(',');
  generate_cmd->add_option("--seed", seed, "Generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze_cmd) {
      const auto sys = parse_network(read_file(path_a));
      std::cout << emit_report(analyze(sys, path_a), format());
      return kOk;
    }
    if (*equiv_cmd) {
      const auto a = parse_network(read_file(path_a));
      const auto b = align_species(parse_network(read_file(path_b)), a.species());
      std::optional<std::vector<Complex>> subset;
      if (!on.empty()) {
        subset.emplace();
        for (const auto& text : on) subset->push_back(parse_complex(text, a.species()));
      }
      const auto report = compare_systems(a, b, path_a, path_b, subset);
      std::cout << emit_report(report, format());
      return report.equivalent ? kOk : kNegative;
    }
    if (*netvec_cmd) {
      const auto sys = parse_network(read_file(path_a));
      std::cout << emit_report(net_vectors(sys, path_a), format());
      return kOk;
    }
    if (*realize_cmd) {
      const auto report = realize(parse_ode(read_file(path_a)), path_a);
      std::cout << emit_report(report, format());
      return report.result.system ? kOk : kNegative;
    }
    if (*certify_cmd) {
      const auto report = certify(parse_ode(read_file(path_a)), path_a, max_vertices);
      std::cout << emit_report(report, format());
      const auto count = report.certificate.valid_count;
      if (count > 1) {
        std::cerr << "invariant violation: " << count << " distinct WR0 realizations found\n";
        return kInvariant;
      }
      return count == 1 ? kOk : kNegative;
    }
    if (*simulate_cmd) {
      const auto sys = parse_network(read_file(path_a));
      SimulationOptions options;
      options.dt = dt;
      options.steps = steps;
      options.record_every = record_every > 0 ? record_every : std::max<std::size_t>(1, steps / 100);
      if (!ref.empty()) options.reference = to_eigen(ref);
      const auto report = run_simulation(sys, to_eigen(x0), options, path_a);
      std::cout << emit_report(report, format());
      return report.trajectory.aborted ? kNegative : kOk;
    }
    if (*generate_cmd) {
      std::cout << format_network(random_wr0_system(gen_species, gen_classes, gen_sizes, seed));
      return kOk;
    }
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
