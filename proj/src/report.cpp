#include "crnkit/report.hpp"

#include "crnkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <iomanip>
#include <set>
#include <sstream>

namespace crnkit {

using nlohmann::json;

namespace {

json vector_json(const RatVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v[i]));
  return out;
}

std::string vector_text(const RatVector& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) out += (i ? ", " : "") + to_string(v[i]);
  return out + ")";
}

json net_map_json(const NetReactionMap& map, const std::vector<std::string>& species) {
  json out = json::object();
  for (const auto& [y, w] : map.entries) out[format_complex(y, species)] = vector_json(w);
  return out;
}

json complexes_json(const std::vector<Complex>& cs, const std::vector<std::string>& species) {
  json out = json::array();
  for (const auto& c : cs) out.push_back(format_complex(c, species));
  return out;
}

json system_json(const MassActionSystem& sys) {
  json reactions = json::array();
  for (const auto& r : sys.reactions())
    reactions.push_back({{"source", format_complex(r.source, sys.species())},
                         {"target", format_complex(r.target, sys.species())},
                         {"rate", to_string(r.rate)}});
  return {{"species", sys.species()}, {"reactions", reactions}, {"crn", format_network(sys)}};
}

json partition_json(const PartitionCandidate& p, const std::vector<Complex>& vertices,
                    const std::vector<std::string>& species) {
  json out = json::array();
  for (const auto& cls : p.classes) {
    json members = json::array();
    for (auto v : cls) members.push_back(format_complex(vertices[v], species));
    out.push_back(members);
  }
  return out;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

AnalysisReport analyze(const MassActionSystem& sys, std::string input) {
  AnalysisReport r;
  r.input = std::move(input);
  r.species = sys.species();
  r.vertices = sys.vertices();
  r.network = deficiency_zero_diagnosis(sys.network());
  r.net_map = net_reaction_map(sys);
  r.wr0 = r.network.weakly_reversible && r.network.deficiency == 0;
  r.complex_balanced_for_all_rates = r.wr0;
  return r;
}

EquivalenceReport compare_systems(const MassActionSystem& a, const MassActionSystem& b, std::string input_a,
                                  std::string input_b, std::optional<std::vector<Complex>> subset) {
  EquivalenceReport r;
  r.input_a = std::move(input_a);
  r.input_b = std::move(input_b);
  r.species = a.species();
  std::vector<Complex> checked;
  if (subset) {
    checked = *subset;
    r.equivalent = is_dynamically_equivalent_on(a, b, checked);
  } else {
    std::set<Complex> all(a.vertices().begin(), a.vertices().end());
    all.insert(b.vertices().begin(), b.vertices().end());
    checked.assign(all.begin(), all.end());
    r.equivalent = is_dynamically_equivalent(a, b);
  }
  for (const auto& y : checked) {
    RatVector wa = net_reaction_vector(a, y);
    RatVector wb = net_reaction_vector(b, y);
    if (!same_vector(wa, wb)) r.differences.push_back({y, std::move(wa), std::move(wb)});
  }
  r.subset = std::move(subset);
  return r;
}

NetVectorReport net_vectors(const MassActionSystem& sys, std::string input) {
  return NetVectorReport{std::move(input), ode_of(sys), net_reaction_map(sys)};
}

RealizationReport realize(const OdeSystem& ode, std::string input, const SearchOptions& options) {
  RealizationReport r;
  r.input = std::move(input);
  r.ode = ode;
  r.vertices = extract_vertices(ode);
  r.required_linkage_count = required_linkage_count(ode);
  r.result = find_wr0_realization(ode, options);
  if (r.result.system) r.analysis = analyze(*r.result.system, r.input);
  return r;
}

CertificateReport certify(const OdeSystem& ode, std::string input, std::size_t max_vertices,
                          const SearchOptions& options) {
  CertificateReport r;
  r.input = std::move(input);
  r.ode = ode;
  r.vertices = extract_vertices(ode);
  r.certificate = certify_uniqueness(ode, max_vertices, options);
  return r;
}

SimulationReport run_simulation(const MassActionSystem& sys, const Eigen::VectorXd& x0,
                                const SimulationOptions& options, std::string input) {
  SimulationReport r;
  r.input = std::move(input);
  r.species = sys.species();
  r.options = options;
  r.trajectory = simulate(sys, x0, options);
  for (double v : complex_balance_residual(sys, r.trajectory.states.back()))
    r.terminal_residual = std::max(r.terminal_residual, std::abs(v));
  if (options.reference) {
    const auto& l = r.trajectory.lyapunov_samples;
    double worst = l.size() > 1 ? -std::numeric_limits<double>::infinity() : 0.0;
    for (std::size_t i = 1; i < l.size(); ++i) worst = std::max(worst, l[i] - l[i - 1]);
    r.lyapunov_max_increase = worst;
  }
  return r;
}

json to_json(const AnalysisReport& r) {
  json classes = json::array();
  for (const auto& cls : r.network.linkage_classes) {
    json members = json::array();
    for (auto v : cls) members.push_back(format_complex(r.vertices[v], r.species));
    classes.push_back(members);
  }
  json affine = json::array();
  for (bool b : r.network.affinely_independent_classes) affine.push_back(b);
  return {{"input", r.input},
          {"species", r.species},
          {"vertices", complexes_json(r.vertices, r.species)},
          {"linkage_classes", classes},
          {"weakly_reversible", r.network.weakly_reversible},
          {"dim_S", r.network.dim_S},
          {"deficiency", r.network.deficiency},
          {"class_deficiencies", r.network.class_deficiencies},
          {"affinely_independent_classes", affine},
          {"class_subspaces_independent", r.network.class_subspaces_independent},
          {"net_reaction_vectors", net_map_json(r.net_map, r.species)},
          {"zero_net_reaction_vertices", complexes_json(r.net_map.zero_vertices, r.species)},
          {"wr0", r.wr0},
          {"complex_balanced_for_all_rates", r.complex_balanced_for_all_rates}};
}

json to_json(const EquivalenceReport& r) {
  json diffs = json::array();
  for (const auto& d : r.differences)
    diffs.push_back({{"vertex", format_complex(d.vertex, r.species)},
                     {"first", vector_json(d.first)},
                     {"second", vector_json(d.second)}});
  return {{"inputs", {r.input_a, r.input_b}},
          {"species", r.species},
          {"equivalent", r.equivalent},
          {"on", r.subset ? complexes_json(*r.subset, r.species) : json(nullptr)},
          {"differences", diffs}};
}

json to_json(const NetVectorReport& r) {
  return {{"input", r.input},
          {"species", r.ode.variable_names},
          {"net_reaction_vectors", net_map_json(r.net_map, r.ode.variable_names)},
          {"zero_net_reaction_vertices", complexes_json(r.net_map.zero_vertices, r.ode.variable_names)},
          {"ode", format_ode(r.ode)}};
}

json to_json(const RealizationReport& r) {
  json out = r.analysis ? to_json(*r.analysis) : json::object();
  out["input"] = r.input;
  out["species"] = r.ode.variable_names;
  out["vertices"] = complexes_json(r.vertices, r.ode.variable_names);
  out["required_linkage_count"] = r.required_linkage_count ? json(*r.required_linkage_count) : json(nullptr);
  out["realization"] = r.result.system ? system_json(*r.result.system) : json(nullptr);
  out["failure_reason"] = r.result.failure_reason ? json(to_string(*r.result.failure_reason)) : json(nullptr);
  return out;
}

json to_json(const CertificateReport& r) {
  const auto& c = r.certificate;
  json partitions = json::array();
  for (const auto& p : c.valid_partitions) partitions.push_back(partition_json(p, r.vertices, r.ode.variable_names));
  return {{"input", r.input},
          {"species", r.ode.variable_names},
          {"vertices", complexes_json(r.vertices, r.ode.variable_names)},
          {"partitions_examined", c.partitions_examined},
          {"valid_count", c.valid_count},
          {"pruned_by",
           {{"singleton_class", c.pruned_by.singleton_class},
            {"affine_dependence", c.pruned_by.affine_dependence},
            {"net_vector_rank", c.pruned_by.net_vector_rank},
            {"kernel_sign", c.pruned_by.kernel_sign},
            {"subspace_dependence", c.pruned_by.subspace_dependence},
            {"rate_solve", c.pruned_by.rate_solve}}},
          {"valid_partitions", partitions},
          {"witness", c.witness ? system_json(*c.witness) : json(nullptr)}};
}

json to_json(const SimulationReport& r) {
  const auto& t = r.trajectory;
  json states = json::array();
  for (const auto& x : t.states) states.push_back(std::vector<double>(x.data(), x.data() + x.size()));
  const auto& last = t.states.back();
  return {{"input", r.input},
          {"species", r.species},
          {"dt", r.options.dt},
          {"steps", r.options.steps},
          {"steps_taken", t.steps_taken},
          {"aborted", t.aborted},
          {"times", t.times},
          {"states", states},
          {"final_state", std::vector<double>(last.data(), last.data() + last.size())},
          {"conserved_drift", t.conserved_drift},
          {"terminal_residual", r.terminal_residual},
          {"lyapunov_samples", t.lyapunov_samples},
          {"lyapunov_max_increase", r.lyapunov_max_increase ? json(*r.lyapunov_max_increase) : json(nullptr)}};
}

namespace {

void analysis_text(std::ostringstream& out, const AnalysisReport& r) {
  const auto& n = r.network;
  out << "species: ";
  for (std::size_t i = 0; i < r.species.size(); ++i) out << (i ? " " : "") << r.species[i];
  out << "\n"
      << "vertices: " << r.vertices.size() << "  linkage classes: " << n.linkage_classes.size()
      << "  dim S: " << n.dim_S << "  deficiency: " << n.deficiency << "\n"
      << "weakly reversible: " << yes_no(n.weakly_reversible) << "\n";
  for (std::size_t c = 0; c < n.linkage_classes.size(); ++c) {
    out << "\nlinkage class " << c + 1 << "\n"
        << "  deficiency: " << n.class_deficiencies[c] << "\n"
        << "  affinely independent: " << yes_no(n.affinely_independent_classes[c]) << "\n";
    std::size_t width = 0;
    for (auto v : n.linkage_classes[c]) width = std::max(width, format_complex(r.vertices[v], r.species).size());
    for (auto v : n.linkage_classes[c]) {
      const auto& y = r.vertices[v];
      auto it = r.net_map.entries.find(y);
      out << "  " << std::left << std::setw(static_cast<int>(width)) << format_complex(y, r.species) << "  net "
          << (it == r.net_map.entries.end() ? vector_text(RatVector::Zero(y.dim())) : vector_text(it->second))
          << "\n";
    }
  }
  out << "\nclass subspaces independent: " << yes_no(n.class_subspaces_independent) << "\n"
      << "WR0: " << yes_no(r.wr0)
      << (r.complex_balanced_for_all_rates ? " (complex-balanced for all rate constants)" : "") << "\n";
}

std::string render(const json& j, ReportFormat format, const std::function<void(std::ostringstream&)>& text) {
  if (format == ReportFormat::Json) return j.dump(2) + "\n";
  std::ostringstream out;
  text(out);
  return out.str();
}

}  // namespace

std::string emit_report(const AnalysisReport& r, ReportFormat format) {
  if (format == ReportFormat::Json) return to_json(r).dump(2) + "\n";
  std::ostringstream out;
  out << "input: " << r.input << "\n";
  analysis_text(out, r);
  return out.str();
}

std::string emit_report(const EquivalenceReport& r, ReportFormat format) {
  return render(to_json(r), format, [&](std::ostringstream& out) {
    out << r.input_a << " vs " << r.input_b;
    if (r.subset) {
      out << " on {";
      for (std::size_t i = 0; i < r.subset->size(); ++i)
        out << (i ? ", " : "") << format_complex((*r.subset)[i], r.species);
      out << "}";
    }
    out << "\ndynamically equivalent: " << yes_no(r.equivalent) << "\n";
    for (const auto& d : r.differences)
      out << "  differs at " << format_complex(d.vertex, r.species) << ": " << vector_text(d.first) << " vs "
          << vector_text(d.second) << "\n";
  });
}

std::string emit_report(const NetVectorReport& r, ReportFormat format) {
  return render(to_json(r), format, [&](std::ostringstream& out) {
    out << "input: " << r.input << "\nnet reaction vectors:\n";
    for (const auto& [y, w] : r.net_map.entries)
      out << "  " << format_complex(y, r.ode.variable_names) << "  " << vector_text(w) << "\n";
    if (!r.net_map.zero_vertices.empty()) {
      out << "zero net reaction vector at:";
      for (const auto& y : r.net_map.zero_vertices) out << " [" << format_complex(y, r.ode.variable_names) << "]";
      out << "\n";
    }
    out << "\n" << format_ode(r.ode);
  });
}

std::string emit_report(const RealizationReport& r, ReportFormat format) {
  return render(to_json(r), format, [&](std::ostringstream& out) {
    out << "input: " << r.input << "\nvertices:";
    for (const auto& v : r.vertices) out << " [" << format_complex(v, r.ode.variable_names) << "]";
    out << "\nrequired linkage classes: "
        << (r.required_linkage_count ? std::to_string(*r.required_linkage_count) : std::string("infeasible")) << "\n";
    if (r.result.system) {
      out << "\nWR0 realization:\n" << format_network(*r.result.system) << "\n";
      analysis_text(out, *r.analysis);
    } else {
      out << "no WR0 realization: " << to_string(*r.result.failure_reason) << "\n";
    }
  });
}

std::string emit_report(const CertificateReport& r, ReportFormat format) {
  return render(to_json(r), format, [&](std::ostringstream& out) {
    const auto& c = r.certificate;
    out << "input: " << r.input << "\nvertices: " << r.vertices.size() << "\n"
        << "partitions examined: " << c.partitions_examined << "\n"
        << "valid WR0 partitions: " << c.valid_count << "\n"
        << "pruned: singleton " << c.pruned_by.singleton_class << ", affine dependence "
        << c.pruned_by.affine_dependence << ", net-vector rank " << c.pruned_by.net_vector_rank << ", kernel sign "
        << c.pruned_by.kernel_sign << ", subspace dependence " << c.pruned_by.subspace_dependence << ", rate solve "
        << c.pruned_by.rate_solve << "\n";
    if (c.witness) out << "\nwitness:\n" << format_network(*c.witness);
    if (c.valid_count > 1) out << "\nINVARIANT VIOLATION: more than one WR0 realization found\n";
  });
}

std::string emit_report(const SimulationReport& r, ReportFormat format) {
  return render(to_json(r), format, [&](std::ostringstream& out) {
    const auto& t = r.trajectory;
    out << std::setprecision(12) << "input: " << r.input << "\n"
        << "steps: " << t.steps_taken << " of " << r.options.steps << " (dt = " << r.options.dt << ")"
        << (t.aborted ? "  ABORTED: left the positive orthant" : "") << "\n"
        << "final state:";
    for (std::size_t i = 0; i < r.species.size(); ++i)
      out << " " << r.species[i] << "=" << t.states.back()[static_cast<Eigen::Index>(i)];
    out << "\nconserved drift: " << t.conserved_drift << "\n"
        << "terminal complex-balance residual: " << r.terminal_residual << "\n";
    if (r.lyapunov_max_increase) out << "largest Lyapunov increase: " << *r.lyapunov_max_increase << "\n";
  });
}

}  // namespace crnkit
