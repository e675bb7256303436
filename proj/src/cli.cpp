#include "lipfree/cli.hpp"

#include "lipfree/checks.hpp"
#include "lipfree/error.hpp"
#include "lipfree/extremal.hpp"
#include "lipfree/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace lipfree::cli {

namespace {

using io::Json;

// What a command produces: the machine body and the human rendering.
struct Output {
  Json body;
  std::string text;
  bool certified = true;
};

std::string describe(const PointedMetricSpace& space, std::span<const Rational> values) {
  std::string out;
  for (PointIndex x = 0; x < space.size(); ++x) {
    if (x) out += ' ';
    out += space.label(x) + "=" + to_string(values[x]);
  }
  return out;
}

std::string describe(const FreeElement& mu) {
  if (mu.is_zero()) return "0";
  std::string out;
  for (const auto& [p, a] : mu.coeffs()) {
    if (!out.empty()) out += " + ";
    out += to_string(a) + "*delta(" + mu.space().label(p) + ")";
  }
  return out;
}

std::string describe(const PointedMetricSpace& space, const PointSet& points) {
  std::string out = "{";
  for (PointIndex x : points) out += (out.size() > 1 ? ", " : "") + space.label(x);
  return out + "}";
}

std::string describe(const PointedMetricSpace& space, const Molecule& m) {
  return "m(" + space.label(m.p) + "," + space.label(m.q) + ")";
}

std::string describe(const PointedMetricSpace& space, const Decomposition& decomposition) {
  if (decomposition.empty()) return "(empty)";
  std::string out;
  for (const auto& w : decomposition) {
    if (!out.empty()) out += " + ";
    out += to_string(w.coeff) + "*" + describe(space, w.molecule);
  }
  return out;
}

const std::filesystem::path& required(const std::optional<std::filesystem::path>& path, const char* flag) {
  if (!path) throw Error(ErrorCode::InvalidArgument, std::string("missing ") + flag);
  return *path;
}

SpacePtr load_space(const ToolConfig& config) { return io::parse_space(io::read_file(required(config.space, "--space"))); }

std::pair<PointIndex, PointIndex> parse_pair(const PointedMetricSpace& space, const std::optional<std::string>& pair) {
  if (!pair) throw Error(ErrorCode::InvalidArgument, "missing --pair");
  const auto comma = pair->find(',');
  if (comma == std::string::npos || pair->find(',', comma + 1) != std::string::npos)
    throw Error(ErrorCode::InvalidArgument, "--pair expects two labels separated by a comma");
  return {space.index_of(pair->substr(0, comma)), space.index_of(pair->substr(comma + 1))};
}

Output cmd_norm(const ToolConfig& config) {
  auto space = load_space(config);
  auto mu = io::parse_element(space, io::read_file(required(config.element, "--element")));
  auto cert = free_norm(mu);
  Output out;
  out.certified = check_certificate(mu, cert);
  out.body = io::to_json(cert);
  out.body["element"] = io::to_json(mu);
  out.body["certified"] = out.certified;
  out.text = "element: " + describe(mu) + "\nnorm: " + to_string(cert.value) +
             "\ndual witness: " + describe(*space, cert.dual_witness.values()) +
             "\nprimal witness: " + describe(*space, cert.primal_witness) +
             "\ncertificate: " + (out.certified ? "verified" : "FAILED") + "\n";
  return out;
}

Output cmd_support(const ToolConfig& config) {
  auto space = load_space(config);
  auto mu = io::parse_element(space, io::read_file(required(config.element, "--element")));
  const auto by_coefficients = support(mu);
  const auto by_functionals = support_by_functionals(mu);
  Output out;
  out.certified = by_coefficients == by_functionals;
  out.body = Json{{"element", io::to_json(mu)},
                  {"support", io::to_json(*space, by_coefficients)},
                  {"support_by_functionals", io::to_json(*space, by_functionals)},
                  {"agree", out.certified}};
  out.text = "support: " + describe(*space, by_coefficients) +
             "\nsupport by bump functionals: " + describe(*space, by_functionals) + "\n";
  return out;
}

Output cmd_segment(const ToolConfig& config) {
  auto space = load_space(config);
  auto [p, q] = parse_pair(*space, config.pair);
  const Rational eps = config.epsilon ? parse_rational(*config.epsilon) : Rational(0);
  auto seg = segment(*space, p, q, eps);
  Output out;
  out.body = io::to_json(seg, *space);
  out.text = "segment [" + space->label(p) + "," + space->label(q) + "]_" + to_string(eps) + ": " +
             describe(*space, seg.members) + (seg.trivial() ? " (trivial)" : "") + "\n";
  return out;
}

Output cmd_fpq(const ToolConfig& config) {
  auto space = load_space(config);
  auto [p, q] = parse_pair(*space, config.pair);
  auto f = f_pq(space, p, q);
  const Rational lip = lip_constant(f);
  const Rational peak = pairing(Molecule{p, q}.element(space), f);
  Output out;
  out.certified = lip == 1 && peak == 1;
  out.body = Json{{"pair", Json::array({space->label(p), space->label(q)})},
                  {"function", io::to_json(f)},
                  {"lip_constant", to_string(lip)},
                  {"pairing_with_molecule", to_string(peak)}};
  out.text = "f_pq: " + describe(*space, f.values()) + "\nLipschitz constant: " + to_string(lip) +
             "\n<m_pq, f_pq>: " + to_string(peak) + "\n";
  return out;
}

Output cmd_extend(const ToolConfig& config) {
  auto space = load_space(config);
  auto f = io::parse_partial(space, io::read_file(required(config.function, "--function")));
  auto ext = mcshane_extend(f);
  Output out;
  Json cells = Json::array();
  std::string cell_text;
  for (const auto& [k, cell] : ak_partition(f)) {
    cells.push_back(Json{{"k", io::to_json(*space, k)}, {"cell", io::to_json(*space, cell)}});
    cell_text += "  A_" + describe(*space, k) + " = " + describe(*space, cell) + "\n";
  }
  out.body = Json{{"partial", io::to_json(f)}, {"extension", io::to_json(ext)}, {"partition", std::move(cells)}};
  out.text = "McShane extension: " + describe(*space, ext.values()) + "\npartition:\n" + cell_text;
  return out;
}

Output cmd_weight(const ToolConfig& config) {
  auto space = load_space(config);
  auto mu = io::parse_element(space, io::read_file(required(config.element, "--element")));
  auto h = io::parse_weight(space, io::read_file(required(config.weight, "--weight")));
  auto w = weight_element(mu, h);
  const Rational bound = multiplier_bound(h);
  const Rational norm_w = free_norm(w).value, norm_mu = free_norm(mu).value;
  Output out;
  out.certified = norm_w <= bound * norm_mu;
  out.body = Json{{"element", io::to_json(mu)},
                  {"weight", io::to_json(h)},
                  {"weighted", io::to_json(w)},
                  {"bound", to_string(bound)},
                  {"weighted_norm", to_string(norm_w)},
                  {"element_norm", to_string(norm_mu)}};
  out.text = "W_h(mu): " + describe(w) + "\n||W_h(mu)||: " + to_string(norm_w) + "\nbound * ||mu||: " +
             to_string(bound * norm_mu) + "\n";
  return out;
}

Output cmd_classify(const ToolConfig& config) {
  auto space = load_space(config);
  auto [p, q] = parse_pair(*space, config.pair);
  auto v = classify_molecule(space, p, q);
  Output out;
  out.body = io::to_json(v);
  out.text = describe(*space, v.molecule) + ": " + std::string(verdict_name(v.verdict)) +
             "\nsegment: " + describe(*space, v.segment.members) + "\n";
  if (v.exposing_function)
    out.text += "exposing function f_pq: " + describe(*space, v.exposing_function->values()) +
                "\nnorming face: {" + describe(*space, v.face.tight_molecules.front()) + "}\n";
  if (v.counterexample_decomposition) {
    const auto& d = *v.counterexample_decomposition;
    out.text += "midpoint of u = " + describe(d.u) + " and v = " + describe(d.v) + " (through " +
                space->label(d.interior) + ")\n";
  }
  return out;
}

Output cmd_positive_extremes(const ToolConfig& config) {
  auto space = load_space(config);
  const auto extremes = positive_ball_extremes(space);
  Output out;
  out.body = Json::array();
  for (const auto& e : extremes) {
    out.body.push_back(io::to_json(e));
    out.text += describe(e) + "\n";
  }
  out.body = Json{{"extreme_points", std::move(out.body)}};
  return out;
}

Output cmd_witness(const ToolConfig& config) {
  auto space = load_space(config);
  auto lambda = io::parse_element(space, io::read_file(required(config.lambda, "--lambda")));
  auto mu = config.mu ? io::parse_element(space, io::read_file(*config.mu)) : FreeElement(space);
  auto w = almost_positive_witness(lambda, mu);
  Output out;
  if (!w) {
    out.body = Json{{"witness", nullptr}};
    out.text = "no witness: no cell A_K holds three points of supp(lambda)\n";
    return out;
  }
  out.certified = check_witness(*w);
  out.body = Json{{"witness", io::to_json(*w)}, {"verified", out.certified}};
  out.text = "K: " + describe(*space, w->k) + "\ncell: " + describe(*space, w->cell) + "\nchosen points: " +
             space->label(w->chosen_points[0]) + ", " + space->label(w->chosen_points[1]) + ", " +
             space->label(w->chosen_points[2]) + "\nc: " + to_string(w->c[0]) + ", " + to_string(w->c[1]) + ", " +
             to_string(w->c[2]) + "\nv: " + describe(w->v) + "\n||lambda + mu|| = ||lambda +- v + mu||: " +
             to_string(w->norm) + "\nverification: " + (out.certified ? "passed" : "FAILED") + "\n";
  return out;
}

Output cmd_check_suite(const ToolConfig& config) {
  const auto suite = checks::SuiteConfig::with_cap(config.seed, config.max_points);
  const auto results = checks::run_suite(suite, config.jobs);
  Output out;
  Json list = Json::array();
  std::ostringstream text;
  for (const auto& r : results) {
    list.push_back(io::to_json(r, false));
    out.certified = out.certified && r.passed;
    text << "criterion " << r.number << ": " << (r.passed ? "PASS" : "FAIL") << "  " << r.title << " (" << r.instances
         << " instances, " << r.seconds << " s)\n";
    for (const auto& f : r.failures) text << "    " << f << "\n";
  }
  out.body = Json{{"seed", config.seed},
                  {"max_points", config.max_points},
                  {"criteria", std::move(list)},
                  {"passed", out.certified}};
  out.text = text.str();
  return out;
}

const std::map<std::string, std::function<Output(const ToolConfig&)>>& commands() {
  static const std::map<std::string, std::function<Output(const ToolConfig&)>> table{
      {"norm", cmd_norm},
      {"support", cmd_support},
      {"segment", cmd_segment},
      {"fpq", cmd_fpq},
      {"extend", cmd_extend},
      {"weight", cmd_weight},
      {"classify-molecule", cmd_classify},
      {"positive-extremes", cmd_positive_extremes},
      {"witness", cmd_witness},
      {"check-suite", cmd_check_suite},
  };
  return table;
}

}  // namespace

std::size_t default_size_cap() {
  if (const char* env = std::getenv("LIPFREE_SIZE_CAP")) {
    char* end = nullptr;
    const unsigned long long value = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return 10;
}

int run_command(const ToolConfig& config, std::ostream& out, std::ostream& err) {
  try {
    auto it = commands().find(config.command);
    if (it == commands().end()) throw Error(ErrorCode::UnknownCommand, "unknown command \"" + config.command + "\"");
    const Output result = it->second(config);
    if (config.format == Format::Machine) {
      Json body = result.body;
      out << io::dump(io::report(config.command, std::move(body)));
    } else {
      out << result.text;
    }
    return result.certified ? kSuccess : kVerificationFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::InternalVerificationFailure ? kVerificationFailed : kInputError;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in Lipschitz-free spaces over finite pointed metric spaces"};
  ToolConfig config;
  std::string format = "human";
  std::string command_list;
  for (const auto& [name, fn] : commands()) command_list += (command_list.empty() ? "" : ", ") + name;
  app.add_option("command", config.command, "One of: " + command_list)->required();
  app.add_option("--space", config.space, "Space file");
  app.add_option("--element", config.element, "Element file");
  app.add_option("--function", config.function, "Partial function file (extend)");
  app.add_option("--weight", config.weight, "Weight function file");
  app.add_option("--lambda", config.lambda, "Positive element file (witness)");
  app.add_option("--mu", config.mu, "Perturbation element file (witness); zero when omitted");
  app.add_option("--pair", config.pair, "Two labels, e.g. a,b");
  app.add_option("--epsilon", config.epsilon, "Rational in [0,1) for segment");
  app.add_option("--format", format, "human or machine")->check(CLI::IsMember({"human", "machine"}));
  app.add_option("--seed", config.seed, "Seed for check-suite sampling");
  app.add_option("--max-points", config.max_points, "Size cap for exhaustive scans (default LIPFREE_SIZE_CAP or 10)")
      ->check(CLI::PositiveNumber);
  config.jobs = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--jobs", config.jobs, "Worker threads for check-suite")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, r;
    const int code = app.exit(e, o, r);
    out << o.str();
    err << r.str();
    return code == 0 ? kSuccess : kInputError;
  }
  config.format = format == "machine" ? Format::Machine : Format::Human;
  return run_command(config, out, err);
}

}  // namespace lipfree::cli
