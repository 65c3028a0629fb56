#include <cmath>
#include <cstdio>
#include <sstream>

#include "minkqm/cache.hpp"
#include "minkqm/cli.hpp"
#include "minkqm/conjecture.hpp"
#include "minkqm/contfrac.hpp"
#include "minkqm/errors.hpp"
#include "minkqm/minkowski.hpp"
#include "minkqm/moments.hpp"
#include "minkqm/quadrature.hpp"

namespace minkqm::cli {

namespace {

// p/q, "[0;a1,...]" or "[[b1,...]]".
Fraction parse_input(const std::string& text) {
  if (text.rfind("[[", 0) == 0) {
    const SemiRegularCF cf = SemiRegularCF::parse(text);
    return cf.unit ? Fraction(1) : eval_semiregular(cf);
  }
  if (text.rfind('[', 0) == 0) return eval_regular(RegularCF::parse(text));
  return Fraction::parse(text);
}

std::string eps_label(const RunConfig& cfg) { return "1e-" + std::to_string(cfg.precision); }

std::string short_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string angle_str(const AngleForm& a) {
  std::string out = "<";
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (i) out += ",";
    out += a.entries[i].str();
  }
  return out + ">";
}

QuadConfig quad_config(const RunConfig& cfg) {
  QuadConfig q;
  if (cfg.X) q.X = *cfg.X;
  if (cfg.nodes) q.nodes_per_axis = *cfg.nodes;
  q.rule = parse_quad_rule(cfg.rule);
  q.max_nodes = std::max(q.max_nodes, q.nodes_per_axis);
  return q;
}

MomentOptions moment_options(const RunConfig& cfg) {
  MomentOptions o;
  if (cfg.lmax) o.min_lmax = *cfg.lmax;
  if (cfg.Q) {
    o.q_start = *cfg.Q;
    o.q_max = std::max(o.q_max, 2 * *cfg.Q);
  }
  return o;
}

int planned_lmax(const RunConfig& cfg) {
  return std::max(moment_options(cfg).min_lmax, static_cast<int>(std::ceil(std::log2(2.0 / cfg.eps()))));
}

// Computes or fetches one moment; `series` is shared across calls of a table.
class MomentRunner {
 public:
  explicit MomentRunner(const RunConfig& cfg) : cfg_(cfg) {
    if (auto path = MomentCache::resolve_path(cfg.cache_path)) cache_.emplace(*path);
  }

  CachedResult get(int L, Method method) {
    const std::string key = key_for(L, method);
    if (cache_) {
      if (auto hit = cache_->find(key)) return *hit;
    }
    const MomentEstimate est = compute(L, method);
    PrecReal shown = est.value;
    CachedResult r;
    if (method == Method::farey) shown.add_error(0.5 * cfg_.eps());
    r.value = shown.mid_string();
    r.radius = shown.radius_string();
    r.midpoint = est.value.mid_string_full();
    r.params = est.params.str();
    r.tail_bound = method == Method::farey ? "unbounded" : short_double(est.tail_bound);
    if (cache_) {
      cache_->store(key, r);
      cache_->save();
    }
    return r;
  }

  static PrecReal as_ball(const CachedResult& r) {
    PrecReal v = PrecReal::from_decimal(r.midpoint, 256);
    v.add_error(std::stod(r.radius));
    return v;
  }

 private:
  std::string key_for(int L, Method method) const {
    const MomentOptions o = moment_options(cfg_);
    switch (method) {
      case Method::series:
        return cache_key("series", L, "lmax=" + std::to_string(planned_lmax(cfg_)), "Q=" + std::to_string(o.q_start),
                         eps_label(cfg_));
      case Method::farey:
        return cache_key("farey", L, "n=" + std::to_string(cfg_.n.value_or(20)), "-", eps_label(cfg_));
      case Method::bessel: {
        const QuadConfig q = quad_config(cfg_);
        std::ostringstream t;
        t << "X=" << q.X << ";nodes=" << q.nodes_per_axis << ";rule=" << to_string(q.rule) << ";Q=" << o.q_start;
        return cache_key("bessel", L, "lmax=" + std::to_string(planned_lmax(cfg_)), t.str(), eps_label(cfg_));
      }
    }
    return "";
  }

  MomentEstimate compute(int L, Method method) {
    switch (method) {
      case Method::series:
        if (!series_) series_.emplace(Precision(cfg_.eps()), moment_options(cfg_));
        return (*series_)(L);
      case Method::farey:
        return moment_farey(L, cfg_.n.value_or(20));
      case Method::bessel:
        return moment_bessel(L, Precision(cfg_.eps()), quad_config(cfg_), moment_options(cfg_));
    }
    throw DomainError("unknown method");
  }

  const RunConfig& cfg_;
  std::optional<MomentCache> cache_;
  std::optional<SeriesMoments> series_;
};

nlohmann::ordered_json common_inputs(const RunConfig& cfg) {
  nlohmann::ordered_json in;
  in["precision"] = cfg.precision;
  return in;
}

}  // namespace

Report qm_eval(const std::string& x, const RunConfig& cfg) {
  const Fraction v = parse_input(x);
  Report r;
  r.command = "qm eval";
  r.inputs = common_inputs(cfg);
  r.inputs["x"] = x;
  const DyadicRational q = question_mark(v);
  const DyadicRational qs = question_mark_semiregular(v);
  r.results.push_back({"?(x)", q.str(), std::nullopt, true});
  r.results.push_back({"x", v.str(), std::nullopt, true});
  PrecReal dec = PrecReal::from_fraction(q.to_fraction(), 256);
  dec.add_error(0.5 * cfg.eps());
  r.results.push_back({"?(x) decimal", dec.mid_string(), dec.radius_string(), false});
  r.checks.push_back({"regular and semi-regular sums agree", q == qs});
  return r;
}

Report cf_expand(const std::string& x, const RunConfig& cfg) {
  const Fraction v = parse_input(x);
  if (v <= Fraction(0) || v > Fraction(1)) throw DomainError("expansions are defined for 0 < x <= 1");
  Report r;
  r.command = "cf expand";
  r.inputs = common_inputs(cfg);
  r.inputs["x"] = x;
  r.results.push_back({"x", v.str(), std::nullopt, true});
  if (v == Fraction(1)) {
    r.results.push_back({"regular", "[0;1]", std::nullopt, true});
  } else {
    r.results.push_back({"regular", regular_expand(v).str(), std::nullopt, true});
  }
  const SemiRegularCF s = semiregular_expand(v);
  r.results.push_back({"semiregular", s.str(), std::nullopt, true});
  if (!s.unit) r.results.push_back({"angle", angle_str(AngleForm::from_semiregular(s.digits)), std::nullopt, true});
  return r;
}

Report cf_convert(const std::string& x, const RunConfig& cfg) {
  const Fraction v = parse_input(x);
  if (v <= Fraction(0) || v >= Fraction(1)) throw DomainError("conversion is defined for 0 < x < 1");
  const std::size_t K = static_cast<std::size_t>(cfg.K.value_or(12));
  Report r;
  r.command = "cf convert";
  r.inputs = common_inputs(cfg);
  r.inputs["x"] = x;
  r.inputs["K"] = K;
  const RegularCF reg = regular_expand(v);
  r.results.push_back({"x", v.str(), std::nullopt, true});
  r.results.push_back({"regular", reg.str(), std::nullopt, true});
  r.results.push_back({"semiregular", semiregular_expand(v).str(), std::nullopt, true});
  std::size_t k = K;
  SemiRegularCF prefix;
  while (true) {
    try {
      prefix = regular_to_semiregular(reg, k);
      break;
    } catch (const NeedsMoreDigits&) {
      --k;
    }
  }
  r.results.push_back({"mapped prefix", prefix.str(), std::nullopt, true});
  const Fraction approx = eval_semiregular(prefix);
  r.results.push_back({"prefix value", approx.str(), std::nullopt, true});
  const Fraction width = semiregular_cylinder_width(prefix.digits);
  const Fraction gap = v - approx;
  r.checks.push_back({"prefix within cylinder width", (gap.sign() >= 0 ? gap : -gap) <= width});
  return r;
}

Report moments_compute(int L, const std::string& method_name, const RunConfig& cfg) {
  const Method method = parse_method(method_name);
  if (L < 1) throw DomainError("--L must be positive");
  Report r;
  r.command = "moments compute";
  r.inputs = common_inputs(cfg);
  r.inputs["L"] = L;
  r.inputs["method"] = method_name;
  if (method == Method::series) {
    VSeries s(moment_options(cfg).q_start, Precision(cfg.eps() / 16));
    PrecReal sum(0, 128);
    for (int l = 0; l <= 3; ++l) {
      sum += s.term(L, l);
      PrecReal shown = sum;
      shown.add_error(0.5 * cfg.eps());
      r.results.push_back({"partial sum l<=" + std::to_string(l), shown.mid_string(), shown.radius_string(), false});
    }
  }
  MomentRunner runner(cfg);
  const CachedResult m = runner.get(L, method);
  const std::string name = "m_" + std::to_string(L);
  r.results.push_back({name, m.value, m.radius, false});
  r.results.push_back({"tail_bound", m.tail_bound, std::nullopt, std::nullopt});
  r.results.push_back({"params", m.params, std::nullopt, std::nullopt});
  const PrecReal v = MomentRunner::as_ball(m);
  r.checks.push_back({name + " in (0,1)", v.lower_double() > 0.0 && v.upper_double() < 1.0});
  r.rows.push_back({L, method_name, m.value, m.radius, m.params});
  return r;
}

Report moments_table(int Lmax, const std::string& method_name, const RunConfig& cfg) {
  const Method method = parse_method(method_name);
  if (Lmax < 1) throw DomainError("--Lmax must be positive");
  if (Lmax > 40) throw ResourceLimit("--Lmax is capped at 40");
  Report r;
  r.command = "moments table";
  r.inputs = common_inputs(cfg);
  r.inputs["Lmax"] = Lmax;
  r.inputs["method"] = method_name;
  MomentRunner runner(cfg);
  std::vector<PrecReal> values;
  bool in_range = true, decreasing = true;
  for (int L = 1; L <= Lmax; ++L) {
    const CachedResult m = runner.get(L, method);
    r.results.push_back({"m_" + std::to_string(L), m.value, m.radius, false});
    r.rows.push_back({L, method_name, m.value, m.radius, m.params});
    const PrecReal v = MomentRunner::as_ball(m);
    in_range = in_range && v.lower_double() > 0.0 && v.upper_double() < 1.0;
    if (!values.empty()) decreasing = decreasing && v.upper_double() < values.back().lower_double();
    values.push_back(v);
  }
  r.checks.push_back({"values in (0,1)", in_range});
  r.checks.push_back({"decreasing in L", decreasing});
  bool symmetric = true;
  for (const PrecReal& res : symmetry_residual(values)) symmetric = symmetric && res.contains_zero();
  r.checks.push_back({"symmetry residuals contain 0", symmetric});
  return r;
}

Report conjecture_qseq(int n, const RunConfig& cfg) {
  Report r;
  r.command = "conjecture qseq";
  r.inputs = common_inputs(cfg);
  r.inputs["n"] = n;
  const std::vector<Fraction> seq = q_prime_at_minus_one(n);
  std::string joined;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) joined += ",";
    joined += seq[i].str();
    r.results.push_back({"Q_" + std::to_string(i) + "'(-1)", seq[i].str(), std::nullopt, true});
  }
  r.human_text = joined;
  return r;
}

Report conjecture_m2(const RunConfig& cfg) {
  const double T = cfg.T.value_or(6.0);
  const int N = cfg.N.value_or(60);
  Report r;
  r.command = "conjecture m2";
  r.inputs = common_inputs(cfg);
  r.inputs["T"] = T;
  r.inputs["N"] = N;
  const M2Report m = conjecture_m2_report(T, N, quad_config(cfg), 1e-8);
  auto ball = [&](const char* name, const PrecReal& v) {
    PrecReal shown = v;
    shown.add_error(0.5 * cfg.eps());
    r.results.push_back({name, shown.mid_string(), shown.radius_string(), false});
  };
  ball("integral of Lambda_N(t) e^-t over [0,T]", m.integral);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", m.integral_quadrature);
  r.results.push_back({"same integral by quadrature", buf, std::nullopt, std::nullopt});
  ball("m_2 (series)", m.m2);
  PrecReal diff = m.difference;
  r.results.push_back({"difference", diff.mid_string(12), diff.radius_string(), false});
  r.results.push_back({"heuristic remainder", short_double(m.heuristic_remainder), std::nullopt, std::nullopt});
  r.results.push_back({"status", "conjectural: reported, not asserted", std::nullopt, std::nullopt});
  return r;
}

}  // namespace minkqm::cli
