#include "qexlab/cayley.hpp"
#include "qexlab/error.hpp"
#include "qexlab/extractor.hpp"
#include "qexlab/groups.hpp"
#include "qexlab/instance.hpp"
#include "qexlab/qexpander.hpp"
#include "qexlab/qszk.hpp"
#include "qexlab/repr.hpp"
#include "qexlab/report.hpp"
#include "qexlab/verify.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

using namespace qexlab;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerification = 2;

std::uint64_t resolve_seed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("QEXLAB_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    require(end && *end == '\0', ErrorKind::invalid_input, std::string("QEXLAB_SEED is not an integer: ") + env);
    return v;
  }
  return flag_seed;
}

/// Hash over the explicitly given options of a subcommand, output paths
/// excluded, plus the resolved seed.
std::string config_hash(const CLI::App& sub, std::uint64_t seed) {
  std::string canon = sub.get_name();
  for (const CLI::Option* opt : sub.get_options()) {
    const std::string name = opt->get_name();
    if (name == "--out" || name == "--csv" || name == "--json" || name == "--help" || name == "--seed") continue;
    if (opt->count() == 0) continue;
    canon += ";" + name + "=";
    for (const auto& r : opt->results()) canon += r + ",";
  }
  canon += ";seed=" + std::to_string(seed);
  return fnv1a_hex(canon);
}

Json meta(const std::string& command, const std::string& hash, std::uint64_t seed) {
  return Json{{"tool", "qexlab"}, {"version", kVersion}, {"command", command}, {"config_hash", hash}, {"seed", seed}};
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_file_atomic(path, content);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

/// `random:<k>` takes its seed from the run.
GeneratingSet generators_from_spec(const std::string& spec, const FiniteGroup& g, std::uint64_t seed) {
  std::string text = spec;
  if (text.starts_with("random:") && std::count(text.begin(), text.end(), ':') == 1)
    text += ":" + std::to_string(seed);
  return parse_generator_spec(text, g);
}

MappingKind mapping_from_spec(const std::string& spec, const FiniteGroup& g) {
  return spec == "auto" ? default_mapping(g) : parse_mapping_kind(spec);
}

struct ExpanderRow {
  std::string group;
  std::string generators;
  std::size_t n = 0;
  std::size_t degree = 0;
  double lambda_bar = 0.0;
  std::optional<RamanujanVerdict> ramanujan;
  std::size_t degree_quantum = 0;
  GapReport gap;
  LowerBoundVerdict lower;
  double good_basis = 0.0;
  MappingKind mapping = MappingKind::abelian;
  bool mapping_fallback = false;
  std::vector<Element> elements;
  bool gap_pass = false;
  bool pass = false;
};

ExpanderRow expander_row(const std::string& group_spec, const std::string& gen_spec, const std::string& mapping_spec,
                         std::uint64_t seed) {
  auto built = build_group(parse_group_spec(group_spec));
  auto gamma = generators_from_spec(gen_spec, *built.group, seed);
  const auto kind = mapping_from_spec(mapping_spec, *built.group);
  auto eb = build_expander(built.group, built.tower, gamma, kind, seed);
  ExpanderRow r;
  r.group = group_spec;
  r.generators = gen_spec;
  r.n = built.group->order();
  r.degree = gamma.degree();
  r.elements = gamma.elements;
  r.lambda_bar = eb.classical.lambda_bar;
  if (r.degree >= 3) r.ramanujan = ramanujan_check(r.lambda_bar, r.degree);
  r.degree_quantum = r.degree * r.degree;
  r.gap = spectral_gap(eb.e, GapMethod::automatic, seed);
  r.lower = lower_bound_check(r.degree_quantum, r.gap.sigma2, r.n);
  r.good_basis = good_basis_check(eb.basis.u, *built.group).max_residual;
  r.mapping = eb.mapping.kind;
  r.mapping_fallback = eb.mapping.fallback;
  r.gap_pass = r.gap.sigma2 <= r.lambda_bar + 1e-7;
  r.pass = r.gap_pass && r.lower.pass && r.good_basis <= 1e-7;
  return r;
}

// ---------------------------------------------------------------------------

int cmd_gap_report(const CLI::App& sub, const std::vector<std::string>& groups, const std::vector<std::string>& gens,
                   const std::string& mapping, const std::string& csv_path, const std::string& json_path,
                   std::uint64_t seed) {
  const std::string hash = config_hash(sub, seed);
  CsvTable csv({"group", "degree", "lambda_bar", "ramanujan_threshold", "pass", "generators", "N", "degree_quantum",
                "sigma2", "gap_bound_pass", "lower_bound", "lower_bound_vacuous", "lower_bound_pass",
                "good_basis_residual"});
  Json rows = Json::array();
  bool all = true;
  for (const auto& g : groups)
    for (const auto& s : gens) {
      const auto r = expander_row(g, s, mapping, seed);
      all = all && r.pass;
      csv.add_row({r.group, std::to_string(r.degree), format_double(r.lambda_bar),
                   r.ramanujan ? format_double(r.ramanujan->threshold) : "",
                   r.ramanujan ? (r.ramanujan->pass ? "true" : "false") : "n/a", r.generators, std::to_string(r.n),
                   std::to_string(r.degree_quantum), format_double(r.gap.sigma2), r.gap_pass ? "true" : "false",
                   format_double(r.lower.bound), r.lower.vacuous ? "true" : "false", r.lower.pass ? "true" : "false",
                   format_double(r.good_basis)});
      Json row{{"group", r.group},
               {"generators", r.generators},
               {"generator_elements", r.elements},
               {"N", r.n},
               {"degree_classical", r.degree},
               {"lambda_bar", r.lambda_bar},
               {"ramanujan_threshold", r.ramanujan ? Json(r.ramanujan->threshold) : Json()},
               {"ramanujan_pass", r.ramanujan ? Json(r.ramanujan->pass) : Json()},
               {"degree_quantum", r.degree_quantum},
               {"sigma2", r.gap.sigma2},
               {"gap_method", to_string(r.gap.method)},
               {"gap_bound_pass", r.gap_pass},
               {"lower_bound", r.lower.bound},
               {"lower_bound_vacuous", r.lower.vacuous},
               {"lower_bound_pass", r.lower.pass},
               {"good_basis_residual", r.good_basis},
               {"pass", r.pass}};
      rows.push_back(row);
    }
  // Build both documents before writing either, so errors leave no files.
  const std::string csv_text = csv.render(hash, seed);
  Json doc{{"meta", meta("gap-report", hash, seed)}, {"rows", rows}, {"pass", all}};
  if (!json_path.empty()) emit(json_path, dump(doc));
  if (!csv_path.empty() || json_path.empty()) emit(csv_path, csv_text);
  return all ? kExitOk : kExitVerification;
}

std::vector<std::size_t> parse_degree_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    require(!item.empty() && item.find_first_not_of("0123456789") == std::string::npos, ErrorKind::invalid_input,
            "degree list must be comma-separated integers");
    out.push_back(std::stoul(item));
  }
  require(!out.empty(), ErrorKind::invalid_input, "empty degree list");
  return out;
}

int cmd_sweep(const CLI::App& sub, const std::string& group_spec, const std::string& degrees_text, std::size_t samples,
              const std::string& mapping, const std::string& out, std::uint64_t seed) {
  const auto degrees = parse_degree_list(degrees_text);
  require(samples >= 1, ErrorKind::invalid_input, "samples must be >= 1");
  const std::string hash = config_hash(sub, seed);
  auto built = build_group(parse_group_spec(group_spec));
  const auto kind = mapping_from_spec(mapping, *built.group);
  CsvTable csv({"D", "sigma2_mean", "sigma2_min", "lower_bound", "ramanujan"});
  bool all = true;
  for (auto d : degrees) {
    const auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(d))));
    require(k * k == d && k >= 2 && k % 2 == 0, ErrorKind::invalid_input,
            "quantum degree " + std::to_string(d) + " must be the square of an even generator count");
    double sum = 0.0, mn = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < samples; ++s) {
      auto gamma = random_symmetric_generators(*built.group, k, derive_seed(seed, d * 1000 + s));
      auto eb = build_expander(built.group, built.tower, gamma, kind, seed);
      const double sigma2 = spectral_gap(eb.e, GapMethod::automatic, seed).sigma2;
      all = all && sigma2 <= eb.classical.lambda_bar + 1e-7;
      sum += sigma2;
      mn = std::min(mn, sigma2);
    }
    const double dd = static_cast<double>(d);
    csv.add_row({std::to_string(d), format_double(sum / static_cast<double>(samples)), format_double(mn),
                 format_double(lower_bound_check(d, 0.0, built.group->order()).bound),
                 format_double(2.0 * std::sqrt(dd - 1.0) / dd)});
  }
  emit(out, csv.render(hash, seed));
  return all ? kExitOk : kExitVerification;
}

int cmd_dump_fourier(const CLI::App& sub, const std::string& group_spec, const std::string& out, std::uint64_t seed) {
  const std::string hash = config_hash(sub, seed);
  auto built = build_group(parse_group_spec(group_spec));
  auto f = fourier_transform(built.group, explicit_irreps(*built.group, seed));
  CsvTable csv({"row_label", "col_group_element", "re", "im"});
  for (std::size_t r = 0; r < f.rows.size(); ++r)
    for (Element g = 0; g < built.group->order(); ++g) {
      const auto v = f.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(g));
      csv.add_row({row_label(f.rows[r]), std::to_string(g), format_double(v.real()), format_double(v.imag())});
    }
  emit(out, csv.render(hash, seed));
  return unitarity_residual(f.matrix) <= 1e-8 ? kExitOk : kExitVerification;
}

int cmd_build_expander(const CLI::App& sub, const std::string& group_spec, const std::string& gen_spec,
                       const std::string& mapping, const std::string& out, std::uint64_t seed) {
  const std::string hash = config_hash(sub, seed);
  const auto r = expander_row(group_spec, gen_spec, mapping, seed);
  Json doc{{"meta", meta("build-expander", hash, seed)},
           {"group", r.group},
           {"N", r.n},
           {"generators", r.elements},
           {"mapping", to_string(r.mapping)},
           {"mapping_fallback", r.mapping_fallback},
           {"degree_classical", r.degree},
           {"lambda_bar_classical", r.lambda_bar},
           {"degree_quantum", r.degree_quantum},
           {"sigma2", r.gap.sigma2},
           {"gap_method", to_string(r.gap.method)},
           {"gap_residual", r.gap.residual},
           {"lower_bound", r.lower.bound},
           {"lower_bound_vacuous", r.lower.vacuous},
           {"lower_bound_pass", r.lower.pass},
           {"good_basis_residual", r.good_basis},
           {"seed", seed},
           {"pass", r.pass}};
  emit(out, dump(doc));
  return r.pass ? kExitOk : kExitVerification;
}

int cmd_verify_extractor(const CLI::App& sub, const std::string& report_path, double t, std::size_t trials,
                         const std::string& out, std::uint64_t seed) {
  const std::string hash = config_hash(sub, seed);
  Json rep;
  try {
    rep = Json::parse(read_file(report_path));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::invalid_input, std::string("expander report is not valid JSON: ") + e.what());
  }
  require(rep.contains("group") && rep.contains("generators") && rep.contains("mapping"), ErrorKind::invalid_input,
          "expander report lacks group, generators or mapping");
  auto built = build_group(parse_group_spec(rep["group"].get<std::string>()));
  GeneratingSet gamma{rep["generators"].get<std::vector<Element>>()};
  const auto build_seed = rep.contains("seed") ? rep["seed"].get<std::uint64_t>() : seed;
  auto eb = build_expander(built.group, built.tower, gamma, parse_mapping_kind(rep["mapping"].get<std::string>()),
                           build_seed);
  const auto gap = spectral_gap(eb.e, GapMethod::automatic, build_seed);
  const double n = static_cast<double>(built.group->order());
  require(t >= 0.0 && t <= std::log2(n), ErrorKind::invalid_input, "t must lie in [0, log2 N]");
  const auto params = expander_to_extractor_params(gap.sigma2, t);
  const auto check = extractor_check(eb.e, std::log2(n) - t, params.epsilon, trials, seed);
  Rng rng(derive_seed(seed, 77));
  bool growth = true;
  for (std::size_t i = 0; i < 100; ++i)
    growth = growth && entropy_growth_check(eb.e, DensityMatrix(random_density(built.group->order(), rng))).pass;
  const bool pass = check.pass && growth;
  Json doc{{"meta", meta("verify-extractor", hash, seed)},
           {"group", rep["group"]},
           {"t", t},
           {"k", check.k},
           {"sigma2", gap.sigma2},
           {"epsilon_bound", params.epsilon + 1e-7},
           {"vacuous", params.vacuous},
           {"worst_distance", check.worst_distance},
           {"samples", check.samples},
           {"entropy_growth_pass", growth},
           {"pass", pass}};
  emit(out, dump(doc));
  return pass ? kExitOk : kExitVerification;
}

template <class T>
T param(const Json& p, const char* key, T fallback) {
  if (!p.contains(key) || p.at(key).is_null()) return fallback;
  try {
    return p.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    fail(ErrorKind::invalid_input, std::string("parameter '") + key + "' has the wrong type");
  }
}

Json constraint_json(const std::vector<Constraint>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) out.push_back({{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"satisfied", c.satisfied}});
  return out;
}

int cmd_run_reduction(const CLI::App& sub, const std::string& kind, const std::string& instance_path,
                      const std::string& out, std::uint64_t seed) {
  const std::string hash = config_hash(sub, seed);
  Json ij;
  try {
    ij = Json::parse(read_file(instance_path));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::invalid_input, std::string("instance is not valid JSON: ") + e.what());
  }
  const auto inst = instance_from_json(ij);
  const auto& p = inst.params;
  Json v{{"meta", meta("run-reduction", hash, seed)}, {"kind", kind}, {"problem", to_string(inst.kind)}};
  bool pass = false;

  if (kind == "qea-qsd") {
    require(inst.kind == ProblemKind::qea, ErrorKind::invalid_input, "qea-qsd needs a QEA instance");
    QeaToQsdParams qp;
    qp.epsilon = param(p, "epsilon", qp.epsilon);
    qp.copies = param(p, "copies", qp.copies);
    qp.c0 = param(p, "c0", qp.c0);
    if (p.contains("seed_bits") && !p.at("seed_bits").is_null()) qp.seed_bits = param<std::size_t>(p, "seed_bits", 0);
    qp.strict = param(p, "strict", qp.strict);
    qp.seed = seed;
    const auto r = qea_to_qsd(inst.circuits[0], inst.t, qp);
    v["t"] = r.t;
    v["m"] = r.m;
    v["n"] = r.n;
    v["copies"] = r.copies;
    v["entropy"] = r.entropy;
    v["promise"] = r.promise;
    v["epsilon"] = r.epsilon;
    v["c0"] = r.c0;
    v["seed_bits_required"] = r.seed_bits_required;
    v["seed_bits"] = r.seed_bits;
    v["generators"] = r.generators;
    v["sigma2"] = r.sigma2;
    v["extractor_epsilon"] = r.extractor_epsilon;
    v["constraints"] = constraint_json(r.constraints);
    v["feasible"] = r.feasible;
    v["entropy_xi"] = r.entropy_xi;
    v["distance"] = r.distance;
    v["yes_bound"] = r.yes_bound;
    v["no_bound"] = r.no_bound;
    v["outcome"] = r.outcome;
    v["consistent"] = r.consistent;
    v["entropy_growth_ok"] = r.growth_ok;
    v["entropy_distance_chain_ok"] = r.chain_ok;
    pass = r.pass;
  } else if (kind == "qed-formula") {
    require(inst.kind == ProblemKind::qed, ErrorKind::invalid_input, "qed-formula needs a QED instance");
    const auto r = qed_to_formula(inst.circuits[0], inst.circuits[1]);
    v["n"] = r.n;
    v["entropy_0"] = r.s0;
    v["entropy_1"] = r.s1;
    v["entropy_xi_0"] = r.s_xi0;
    v["entropy_xi_1"] = r.s_xi1;
    v["additivity_residual"] = r.additivity_residual;
    v["promise"] = r.promise;
    v["formula"] = r.formula;
    Json assignment = Json::object();
    for (const auto& [var, val] : r.assignment) assignment["v" + std::to_string(var)] = to_string(val);
    v["assignment"] = assignment;
    v["value"] = to_string(r.value);
    pass = r.pass;
  } else if (kind == "qsd-qed") {
    require(inst.kind == ProblemKind::qsd, ErrorKind::invalid_input, "qsd-qed needs a QSD instance");
    const auto m0 = param<std::size_t>(p, "m0", 8);
    const auto pol = p.contains("polarize") ? p.at("polarize") : Json::object();
    const auto mode = parse_polarize_mode(param<std::string>(pol, "mode", "identity"));
    const auto copies = param<std::size_t>(pol, "copies", 1);
    const double input_distance = trace_distance(evaluate_matrix(inst.circuits[0]), evaluate_matrix(inst.circuits[1]));
    const std::string promise =
        input_distance >= inst.beta ? "yes" : input_distance <= inst.alpha ? "no" : "violated";
    auto [r0, r1] = polarize(inst.circuits[0], inst.circuits[1], mode, copies);
    const auto r = qsd_to_qed(r0, r1, m0);
    v["alpha"] = inst.alpha;
    v["beta"] = inst.beta;
    v["input_distance"] = input_distance;
    v["promise"] = promise;
    v["polarize"] = {{"mode", to_string(mode)}, {"copies", copies}};
    v["m0"] = m0;
    v["polarized_distance"] = r.distance;
    v["far"] = r.far;
    v["entropy_z0"] = r.s_z0;
    v["entropy_z1"] = r.s_z1;
    v["entropy_left"] = r.s_left;
    v["entropy_right"] = r.s_right;
    v["gap"] = r.gap;
    v["margin"] = r.margin;
    v["qed_circuits"] = {{"left_qubits", output_qubits(r.left)}, {"right_qubits", output_qubits(r.right)}};
    pass = r.pass;
  } else {
    fail(ErrorKind::invalid_input, "unknown reduction kind '" + kind + "'");
  }
  v["pass"] = pass;
  emit(out, dump(v));
  return pass ? kExitOk : kExitVerification;
}

int cmd_verify_all(const CLI::App& sub, std::optional<double> tolerance, const std::string& out, std::uint64_t seed) {
  if (tolerance) require(*tolerance > 0.0, ErrorKind::invalid_input, "tolerance must be positive");
  const std::string hash = config_hash(sub, seed);
  const auto s = verify_all(seed, tolerance);
  Json checks = Json::array(), failures = Json::array();
  for (const auto& c : s.checks) {
    Json cj{{"module", c.module}, {"op", c.op},         {"measure", c.measure},
            {"value", c.value},   {"relation", c.relation}, {"threshold", c.threshold},
            {"pass", c.pass}};
    if (!c.pass) failures.push_back(cj);
    checks.push_back(std::move(cj));
  }
  Json doc{{"meta", meta("verify-all", hash, seed)},
           {"tolerance", tolerance ? Json(*tolerance) : Json("default")},
           {"checks", checks},
           {"failures", failures},
           {"pass", s.pass}};
  emit(out, dump(doc));
  return s.pass ? kExitOk : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum expander and QSZK reduction laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);
  std::uint64_t seed = 1;
  app.add_option("--seed", seed, "Base seed (QEXLAB_SEED overrides)");

  std::vector<std::string> groups, gens{"random:4"};
  std::string mapping = "auto", csv_path, json_path, out;
  std::string group_spec, gen_spec = "random:4", degrees, report_path, kind, instance_path;
  std::size_t samples = 3, trials = 16;
  double t = 2.0;
  std::optional<double> tolerance;

  auto add_seed = [&](CLI::App* sub) { sub->add_option("--seed", seed, "Base seed (QEXLAB_SEED overrides)"); };

  auto* gap = app.add_subcommand("gap-report", "Classical and quantum gaps per (group, generators)");
  gap->add_option("--group", groups, "Group spec, repeatable")->required();
  gap->add_option("--generators", gens, "Generator spec, repeatable");
  gap->add_option("--mapping", mapping, "abelian, dihedral, pgl2, searched or auto");
  gap->add_option("--csv", csv_path, "CSV output (stdout if neither output is given)");
  gap->add_option("--json", json_path, "JSON output");
  add_seed(gap);

  auto* sweep = app.add_subcommand("sweep", "sigma2 against quantum degree");
  sweep->add_option("--group", group_spec)->required();
  sweep->add_option("--degrees", degrees, "Comma-separated quantum degrees |Gamma|^2")->required();
  sweep->add_option("--samples", samples, "Generator sets per degree");
  sweep->add_option("--mapping", mapping);
  sweep->add_option("--out", out, "CSV output");
  add_seed(sweep);

  auto* dump_f = app.add_subcommand("dump-fourier", "Fourier transform as CSV");
  dump_f->add_option("--group", group_spec)->required();
  dump_f->add_option("--out", out, "CSV output");
  add_seed(dump_f);

  auto* build = app.add_subcommand("build-expander", "Construct one quantum expander");
  build->add_option("--group", group_spec)->required();
  build->add_option("--generators", gen_spec);
  build->add_option("--mapping", mapping);
  build->add_option("--out", out, "JSON report");
  add_seed(build);

  auto* vext = app.add_subcommand("verify-extractor", "Check the extractor bound of a built expander");
  vext->add_option("--expander", report_path, "Report from build-expander")->required();
  vext->add_option("--t", t, "Entropy deficiency");
  vext->add_option("--trials", trials, "Random trials per state family");
  vext->add_option("--out", out, "JSON output");
  add_seed(vext);

  auto* red = app.add_subcommand("run-reduction", "Run a reduction on an instance file");
  red->add_option("--kind", kind, "qea-qsd, qed-formula or qsd-qed")
      ->required()
      ->check(CLI::IsMember({"qea-qsd", "qed-formula", "qsd-qed"}));
  red->add_option("--instance", instance_path)->required();
  red->add_option("--out", out, "JSON verdict");
  add_seed(red);

  auto* vall = app.add_subcommand("verify-all", "Invariant suite over every module");
  vall->add_option("--tolerance", tolerance, "Override every residual tolerance");
  vall->add_option("--out", out, "JSON summary");
  add_seed(vall);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    seed = resolve_seed(seed);
    if (gap->parsed()) return cmd_gap_report(*gap, groups, gens, mapping, csv_path, json_path, seed);
    if (sweep->parsed()) return cmd_sweep(*sweep, group_spec, degrees, samples, mapping, out, seed);
    if (dump_f->parsed()) return cmd_dump_fourier(*dump_f, group_spec, out, seed);
    if (build->parsed()) return cmd_build_expander(*build, group_spec, gen_spec, mapping, out, seed);
    if (vext->parsed()) return cmd_verify_extractor(*vext, report_path, t, trials, out, seed);
    if (red->parsed()) return cmd_run_reduction(*red, kind, instance_path, out, seed);
    if (vall->parsed()) return cmd_verify_all(*vall, tolerance, out, seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::invalid_input:
      case ErrorKind::precondition:
      case ErrorKind::unsupported: return kExitConfig;
      case ErrorKind::numerical:
      case ErrorKind::verification: return kExitVerification;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitVerification;
  }
  return kExitConfig;
}
