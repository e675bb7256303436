#include "lipfree/checks.hpp"

#include "lipfree/error.hpp"
#include "lipfree/extremal.hpp"
#include "lipfree/generators.hpp"
#include "lipfree/linalg.hpp"
#include "lipfree/norm.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <thread>

namespace lipfree::checks {

namespace {

constexpr std::size_t kKeptMessages = 8;

class Recorder {
 public:
  explicit Recorder(CriterionResult& result) : result_(result) {}

  void instance() { ++result_.instances; }

  bool expect(bool ok, const std::string& what) {
    if (!ok) {
      ++result_.failure_count;
      if (result_.failures.size() < kKeptMessages) result_.failures.push_back(what);
    }
    return ok;
  }

 private:
  CriterionResult& result_;
};

std::size_t scaled(const SuiteConfig& config, std::size_t count) {
  return std::max<std::size_t>(1, count * config.scale_percent / 100);
}

std::string pair_name(const std::string& space, const PointedMetricSpace& m, PointIndex p, PointIndex q) {
  return space + " (" + m.label(p) + "," + m.label(q) + ")";
}

std::uint64_t stream_seed(const SuiteConfig& config, int criterion) {
  return config.seed * 1000003u + static_cast<std::uint64_t>(criterion);
}

std::size_t sized(gen::Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

FreeElement normalized(const FreeElement& mu) { return mu / positive_norm(mu); }

// 1. molecule norms on random spaces, both LP routes
void molecule_norms(const SuiteConfig& config, Recorder& rec) {
  gen::Rng rng(stream_seed(config, 1));
  const std::size_t hi = std::max<std::size_t>(2, config.random_max);
  const std::size_t spaces = scaled(config, 50);
  for (std::size_t i = 0; i < spaces; ++i) {
    const std::size_t n = 2 + i % (hi - 1);
    auto space = gen::random_space(rng, n);
    const std::string name = "random space " + std::to_string(i);
    for (const auto& m : all_molecules(*space)) {
      rec.instance();
      auto mu = m.element(space);
      const auto dual = free_norm_dual(mu);
      const auto primal = free_norm_primal(mu);
      rec.expect(dual.value == 1, pair_name(name, *space, m.p, m.q) + ": dual norm " + to_string(dual.value));
      rec.expect(primal.value == 1, pair_name(name, *space, m.p, m.q) + ": primal norm " + to_string(primal.value));
      NormCertificate cert{dual.value, dual.witness, primal.decomposition};
      rec.expect(dual.value == primal.value && check_certificate(mu, cert),
                 pair_name(name, *space, m.p, m.q) + ": duality gap");
    }
  }
}

// 2. exposed iff the segment is trivial, with certificates on both sides
void exposedness(const SuiteConfig& config, Recorder& rec) {
  for (const auto& entry : gen::default_corpus(stream_seed(config, 2), config.corpus_max)) {
    const auto& space = entry.space;
    for (const auto& m : all_molecules(*space)) {
      rec.instance();
      const std::string where = pair_name(entry.name, *space, m.p, m.q);
      const auto v = classify_molecule(space, m.p, m.q);
      const bool trivial = segment(*space, m.p, m.q).members.size() == 2;
      rec.expect(v.segment_trivial == trivial, where + ": segment flag");
      rec.expect((v.verdict == Verdict::Exposed) == trivial, where + ": verdict " + std::string(verdict_name(v.verdict)));
      rec.expect(v.face.is_unique_normer == trivial, where + ": face uniqueness");
      const auto element = m.element(space);
      if (trivial) {
        rec.expect(v.exposing_function.has_value() && *v.exposing_function == f_pq(space, m.p, m.q),
                   where + ": exposing function is not f_pq");
        rec.expect(v.face.tight_molecules == std::vector<Molecule>{m}, where + ": face is not {m_pq}");
        rec.expect(v.face.face_dimension == 0 && v.face.nominal_normer == element, where + ": face dimension");
        // independent LP route: every coordinate of the face is pinned to m_pq
        bool pinned = true;
        for (const auto& [x, range] : face_coordinate_ranges(f_pq(space, m.p, m.q)))
          pinned = pinned && range.fixed() && range.min == element.coeff(x);
        rec.expect(pinned, where + ": LP face is not a singleton");
        rec.expect(!v.counterexample_decomposition, where + ": unexpected decomposition");
      } else if (rec.expect(v.counterexample_decomposition.has_value(), where + ": missing decomposition")) {
        const auto& dec = *v.counterexample_decomposition;
        rec.expect(dec.u != dec.v, where + ": u = v");
        rec.expect((dec.u + dec.v) / Rational(2) == element, where + ": midpoint is not m_pq");
        rec.expect(check_certificate(dec.u, dec.u_norm) && dec.u_norm.value == 1, where + ": ||u|| certificate");
        rec.expect(check_certificate(dec.v, dec.v_norm) && dec.v_norm.value == 1, where + ": ||v|| certificate");
        rec.expect(free_norm_dual(dec.u).value == 1 && free_norm_dual(dec.v).value == 1, where + ": ||u||, ||v|| by LP");
      }
    }
  }
}

// 3. normers of f_pq are supported in [p,q]
void normer_support(const SuiteConfig& config, Recorder& rec) {
  for (const auto& entry : gen::default_corpus(stream_seed(config, 2), config.corpus_max)) {
    for (const auto& m : all_molecules(*entry.space)) {
      rec.instance();
      rec.expect(normers_support_check(entry.space, m.p, m.q), pair_name(entry.name, *entry.space, m.p, m.q));
    }
  }
}

// 4. extreme points of the positive ball
void positive_ball(const SuiteConfig& config, Recorder& rec) {
  gen::Rng rng(stream_seed(config, 4));
  for (const auto& entry : gen::default_corpus(stream_seed(config, 2), config.positive_max)) {
    const auto& space = entry.space;
    const auto points = space->non_base_points();
    linalg::Matrix a;
    linalg::Vector b;
    for (std::size_t k = 0; k < points.size(); ++k) {
      linalg::Vector row(points.size(), Rational(0));
      row[k] = -1;
      a.push_back(std::move(row));
      b.push_back(0);
    }
    linalg::Vector budget;
    for (PointIndex p : points) budget.push_back(space->dist(p, space->base()));
    if (!points.empty()) {
      a.push_back(std::move(budget));
      b.push_back(1);
    }
    auto vertices = linalg::enumerate_vertices(a, b);
    std::vector<linalg::Vector> claimed;
    for (const auto& e : positive_ball_extremes(space)) claimed.push_back(e.coordinates());
    std::sort(vertices.begin(), vertices.end());
    std::sort(claimed.begin(), claimed.end());
    rec.instance();
    rec.expect(vertices == claimed, entry.name + ": extreme points differ from vertex enumeration");

    if (points.size() < 2) continue;
    // norm-one positive elements with at least two support points: every pair of
    // normalized point masses mixed in a few ratios, plus random ones
    std::vector<FreeElement> samples;
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j)
        for (const Rational& t : {make_rational(1, 2), make_rational(1, 3), make_rational(4, 5)})
          samples.push_back(t * FreeElement::delta(space, points[i]) / space->dist(points[i], space->base()) +
                            (1 - t) * FreeElement::delta(space, points[j]) / space->dist(points[j], space->base()));
    for (int s = 0; s < 10; ++s) samples.push_back(normalized(gen::random_positive(rng, space, 2)));
    for (const auto& mu : samples) {
      rec.instance();
      const auto split = split_positive(mu);
      const bool ok = split.t > 0 && split.t < 1 && split.first != split.second && is_positive(split.first) &&
                      is_positive(split.second) && free_norm_dual(split.first).value == 1 &&
                      free_norm_dual(split.second).value == 1 && split.t * split.first + (1 - split.t) * split.second == mu;
      rec.expect(ok, entry.name + ": split_positive failed");
    }
  }
}

// 5. positive elements: norm formula, additivity, vanishing on the support
void positive_facts(const SuiteConfig& config, Recorder& rec) {
  gen::Rng rng(stream_seed(config, 5));
  const std::size_t count = scaled(config, 1000);
  for (std::size_t i = 0; i < count; ++i) {
    rec.instance();
    auto space = gen::random_space(rng, sized(rng, 2, 8));
    const std::string where = "instance " + std::to_string(i);
    auto mu = gen::random_positive(rng, space);
    const auto dual = free_norm_dual(mu);
    rec.expect(dual.value == pairing(mu, rho(space)) && positive_norm(mu) == dual.value, where + ": norm formula");

    // additivity over a family of size 1..5
    FreeElement total(space);
    Rational sum;
    const std::size_t family = 1 + i % 5;
    for (std::size_t k = 0; k < family; ++k) {
      auto part = gen::random_positive(rng, space);
      total += part;
      sum += free_norm_dual(part).value;
    }
    rec.expect(free_norm_dual(total).value == sum, where + ": additivity");

    const auto s = support(mu);
    // (d): the LP witness and every normer agree with rho on the support
    for (PointIndex x : s) rec.expect(dual.witness(x) == space->dist(x, space->base()), where + ": witness != rho");
    if (!mu.is_zero()) {
      const auto face = normers_of(mu);
      for (PointIndex x : s)
        rec.expect(face.ranges.at(x).fixed() && face.ranges.at(x).min == space->dist(x, space->base()),
                   where + ": a normer differs from rho on the support");
    }

    // (c): a nonnegative LP witness pairing to zero vanishes on the support
    FreeElement target = -mu;
    for (PointIndex x : space->non_base_points())
      if (!s.contains(x)) target += gen::random_rational(rng, 0, 2, 3) * FreeElement::delta(space, x);
    DualOptions opts;
    opts.nonnegative = true;
    const auto f = free_norm_dual(target, opts).witness;
    bool nonnegative = true;
    for (const auto& value : f.values()) nonnegative = nonnegative && value >= 0;
    rec.expect(nonnegative, where + ": nonnegative option violated");
    if (pairing(mu, f) == 0)
      for (PointIndex x : s) rec.expect(f(x) == 0, where + ": f != 0 on the support");
  }
}

// 6. the weighting operator
void weighting(const SuiteConfig& config, Recorder& rec) {
  gen::Rng rng(stream_seed(config, 6));
  const std::size_t count = scaled(config, 1000);
  for (std::size_t i = 0; i < count; ++i) {
    rec.instance();
    auto space = gen::random_space(rng, sized(rng, 1, 8));
    const std::string where = "triple " + std::to_string(i);
    const bool positive_case = i % 2 == 0;
    auto mu = positive_case ? gen::random_positive(rng, space) : gen::random_element(rng, space);
    auto h = gen::random_weight(rng, space, positive_case);
    auto f = gen::random_function(rng, space);
    auto w = weight_element(mu, h);
    rec.expect(free_norm_dual(w).value <= multiplier_bound(h) * free_norm_dual(mu).value, where + ": norm bound");
    rec.expect(pairing(w, f) == pairing(mu, apply_T_h(f, h)), where + ": duality");
    if (positive_case) rec.expect(is_positive(w), where + ": positivity");
    const auto sw = support(w), smu = support(mu), sh = h.support();
    for (PointIndex x : sw) rec.expect(smu.contains(x) && sh.contains(x), where + ": support inclusion");
  }
}

// 7. intersections of coordinate subspaces
void intersections(const SuiteConfig& config, Recorder& rec) {
  gen::Rng rng(stream_seed(config, 7));
  const std::size_t count = scaled(config, 500);
  for (std::size_t i = 0; i < count; ++i) {
    rec.instance();
    auto space = gen::random_space(rng, sized(rng, 1, 10));
    std::vector<PointSet> family(sized(rng, 1, 4));
    for (auto& k : family) k = gen::random_subset(rng, *space);
    rec.expect(intersection_property_check(*space, family), "instance " + std::to_string(i));
  }
}

// 8. McShane maximality, concavity of N, maximum of N
void mcshane_and_n(const SuiteConfig& config, Recorder& rec) {
  gen::Rng rng(stream_seed(config, 8));
  const std::size_t extensions = scaled(config, 500);
  for (std::size_t i = 0; i < extensions; ++i) {
    rec.instance();
    auto space = gen::random_space(rng, sized(rng, 1, 9));
    auto domain = gen::random_subset(rng, *space);
    domain.insert(space->base());
    auto f = gen::random_partial(rng, space, domain);
    auto g = gen::random_extension(rng, f);
    auto fi = mcshane_extend(f);
    bool ok = lip_constant(fi) <= 1 && lip_constant(g) <= 1;
    for (const auto& [x, v] : f.values()) ok = ok && fi(x) == v && g(x) == v;
    for (PointIndex x = 0; x < space->size(); ++x) ok = ok && g(x) <= fi(x);
    rec.expect(ok, "extension " + std::to_string(i));
  }
  const std::size_t mixes = scaled(config, 500);
  for (std::size_t i = 0; i < mixes; ++i) {
    rec.instance();
    auto space = gen::random_space(rng, sized(rng, 2, 9));
    auto lambda = gen::random_positive(rng, space);
    auto mu = gen::random_element(rng, space);
    const auto s = perturbation_domain(mu);
    auto f = gen::random_partial(rng, space, s);
    auto g = gen::random_partial(rng, space, s);
    const Rational c = make_rational(static_cast<long>(sized(rng, 1, 9)), 10);
    std::map<PointIndex, Rational> mix;
    for (PointIndex x : s) mix[x] = c * f(x) + (1 - c) * g(x);
    const PartialFunction h(space, mix);
    rec.expect(N_value(lambda, mu, h) >= c * N_value(lambda, mu, f) + (1 - c) * N_value(lambda, mu, g),
               "concavity " + std::to_string(i));
  }
  const std::size_t maxima = scaled(config, 200);
  for (std::size_t i = 0; i < maxima; ++i) {
    rec.instance();
    auto space = gen::random_space(rng, sized(rng, 2, 9));
    auto lambda = gen::random_positive(rng, space);
    auto mu = gen::random_element(rng, space);
    const auto top = maximize_N(lambda, mu);
    rec.expect(top.value == free_norm_dual(lambda + mu).value && N_value(lambda, mu, top.f_star) == top.value,
               "maximum " + std::to_string(i));
  }
}

// 9. extreme points λ+μ of the unit ball without a witness are molecules
void almost_positive(const SuiteConfig& config, Recorder& rec) {
  gen::Rng rng(stream_seed(config, 9));
  for (const auto& entry : gen::default_corpus(stream_seed(config, 2), config.vertex_max)) {
    const auto& space = entry.space;
    const auto vertices = unit_ball_vertices(space);
    const auto molecules = all_molecules(*space);
    for (const auto& vertex : vertices) {
      const auto e = vertex.element(space);
      const std::string where = entry.name + " vertex m(" + space->label(vertex.p) + "," + space->label(vertex.q) + ")";
      bool molecule = false;
      for (const auto& m : molecules) molecule = molecule || m.element(space) == e;
      rec.expect(molecule, where + ": not a molecule");
      rec.expect(segment(*space, vertex.p, vertex.q).members.size() == 2, where + ": nontrivial segment");

      // splits e = λ + μ: the positive part, each point mass at hand, random positives
      std::vector<FreeElement> lambdas{FreeElement(space)};
      FreeElement::Coefficients positive_part;
      for (const auto& [p, a] : e.coeffs())
        if (a > 0) positive_part[p] = a;
      lambdas.emplace_back(space, positive_part);
      for (int s = 0; s < 4; ++s) lambdas.push_back(gen::random_positive(rng, space, 3));
      for (const auto& lambda : lambdas) {
        rec.instance();
        const auto w = almost_positive_witness(lambda, e - lambda);
        rec.expect(!w, where + ": witness for an extreme point");
      }
    }

    // non-extreme points of the form λ+μ: witnesses must verify, and normalized
    // positive elements with three support points must produce one
    if (space->size() < 4) continue;
    for (int s = 0; s < 6; ++s) {
      rec.instance();
      auto lambda = normalized(gen::random_positive(rng, space, 3));
      const auto bare = almost_positive_witness(lambda, FreeElement(space));
      if (rec.expect(bare.has_value(), entry.name + ": no witness for a positive element")) {
        rec.expect(check_witness(*bare), entry.name + ": witness failed verification");
        rec.expect(!bare->v.is_zero() && is_positive(lambda + bare->v) && is_positive(lambda - bare->v),
                   entry.name + ": λ ± v not positive");
      }
      rec.instance();
      auto mu = gen::random_element(rng, space);
      const auto w = almost_positive_witness(lambda, mu);
      if (w) rec.expect(check_witness(*w), entry.name + ": perturbed witness failed verification");
    }
  }
}

// 10. f_pq properties
void peak_functions(const SuiteConfig& config, Recorder& rec) {
  const Rational epsilons[] = {Rational(0), make_rational(1, 10), make_rational(1, 4)};
  for (const auto& entry : gen::default_corpus(stream_seed(config, 2), config.corpus_max)) {
    const auto& space = entry.space;
    for (const auto& m : all_molecules(*space)) {
      rec.instance();
      const std::string where = pair_name(entry.name, *space, m.p, m.q);
      const auto f = f_pq(space, m.p, m.q);
      rec.expect(lip_constant(f) == 1, where + ": Lipschitz constant");
      rec.expect(pairing(m.element(space), f) == 1, where + ": <m_pq, f_pq>");
      for (const Rational& eps : epsilons) {
        const auto seg = segment(*space, m.p, m.q, eps).members;
        for (const auto& uv : all_molecules(*space)) {
          if (pairing(uv.element(space), f) < 1 - eps) continue;
          rec.expect(seg.contains(uv.p) && seg.contains(uv.q),
                     where + ": pair (" + space->label(uv.p) + "," + space->label(uv.q) + ") outside the segment at eps " +
                         to_string(eps));
        }
      }
    }
  }
}

using Body = void (*)(const SuiteConfig&, Recorder&);

struct CriterionDef {
  std::string title;
  Body body;
};

const std::vector<CriterionDef>& definitions() {
  static const std::vector<CriterionDef> defs{
      {"molecule norms, both LP routes", molecule_norms},
      {"exposed molecules and trivial segments", exposedness},
      {"normers of f_pq supported in [p,q]", normer_support},
      {"extreme points of the positive ball", positive_ball},
      {"positive elements", positive_facts},
      {"weighting operator", weighting},
      {"intersection property", intersections},
      {"McShane extension and N", mcshane_and_n},
      {"almost-positive extreme points", almost_positive},
      {"f_pq properties", peak_functions},
  };
  return defs;
}

}  // namespace

SuiteConfig SuiteConfig::with_cap(std::uint64_t seed, std::size_t max_points) {
  SuiteConfig config;
  config.seed = seed;
  config.corpus_max = std::min(config.corpus_max, max_points);
  config.positive_max = std::min(config.positive_max, max_points);
  config.vertex_max = std::min(config.vertex_max, max_points);
  config.random_max = std::min(config.random_max, max_points);
  return config;
}

const std::string& criterion_title(int number) {
  if (number < 1 || number > kCriterionCount) throw Error(ErrorCode::InvalidArgument, "no criterion " + std::to_string(number));
  return definitions()[static_cast<std::size_t>(number - 1)].title;
}

CriterionResult run_criterion(int number, const SuiteConfig& config) {
  CriterionResult result;
  result.number = number;
  result.title = criterion_title(number);
  Recorder rec(result);
  const auto start = std::chrono::steady_clock::now();
  try {
    definitions()[static_cast<std::size_t>(number - 1)].body(config, rec);
  } catch (const std::exception& e) {
    rec.expect(false, std::string("exception: ") + e.what());
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.passed = result.failure_count == 0 && result.instances > 0;
  return result;
}

std::vector<CriterionResult> run_suite(const SuiteConfig& config, unsigned jobs) {
  std::vector<CriterionResult> results(kCriterionCount);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < kCriterionCount; i = next++) results[static_cast<std::size_t>(i)] = run_criterion(i + 1, config);
  };
  const unsigned threads = std::clamp(jobs, 1u, static_cast<unsigned>(kCriterionCount));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

}  // namespace lipfree::checks
