#include "cqexp/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <limits>
#include <sstream>

#include "cqexp/config.hpp"
#include "cqexp/errors.hpp"
#include "cqexp/rng.hpp"

namespace cqexp {

using nlohmann::json;

ScalarFn lookup_scalar_fn(const std::string& name) {
    if (name.rfind("pow:", 0) == 0) {
        const double p = std::stod(name.substr(4));
        return [p](double x) { return std::pow(x, p); };
    }
    if (name == "inv") return [](double x) { return 1.0 / x; };
    if (name == "log") return [](double x) { return std::log(x); };
    if (name == "xlogx") return [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
    if (name == "negxlogx") return [](double x) { return x > 0.0 ? -x * std::log(x) : 0.0; };
    if (name == "identity") return [](double x) { return x; };
    if (name == "square") return [](double x) { return x * x; };
    throw ValidationError("unknown scalar function '" + name + "'");
}

const char* to_string(PairClass c) {
    switch (c) {
        case PairClass::monotone: return "monotone";
        case PairClass::antimonotone: return "antimonotone";
        default: return "neither";
    }
}

PairCheckResult monotone_pair_check(const MonotonePairSpec& spec,
                                    int sample_count, std::uint64_t seed) {
    if (sample_count < 1) throw ValidationError("sample_count must be >= 1");
    const ScalarFn f = lookup_scalar_fn(spec.f_name);
    const ScalarFn g = lookup_scalar_fn(spec.g_name);
    // sampling window: the domain clipped to +-1e3; a nonnegative domain is
    // additionally kept away from the origin so 1/x and log stay finite
    double lo = std::max(spec.domain.lo, -1e3);
    const double hi = std::min(spec.domain.hi, 1e3);
    if (lo >= 0.0) lo = std::max(lo, 1e-9);
    if (!(hi > lo)) throw ValidationError("empty sampling window for the pair domain");

    Rng rng(seed);
    double min_p = std::numeric_limits<double>::infinity();
    double max_p = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < sample_count; ++i) {
        const double a = rng.uniform(lo, hi);
        const double b = rng.uniform(lo, hi);
        const double fa = f(a), fb = f(b), ga = g(a), gb = g(b);
        if (!std::isfinite(fa) || !std::isfinite(fb))
            throw DomainError("f is not finite on the sampling window");
        if (!std::isfinite(ga) || !std::isfinite(gb))
            throw DomainError("g is not finite on the sampling window");
        const double prod = (fa - fb) * (ga - gb);
        min_p = std::min(min_p, prod);
        max_p = std::max(max_p, prod);
    }
    const double tol = 1e-12 * (1.0 + std::abs(min_p) + std::abs(max_p));
    PairClass cls = PairClass::neither;
    if (min_p >= -tol)
        cls = PairClass::monotone;
    else if (max_p <= tol)
        cls = PairClass::antimonotone;
    return PairCheckResult{cls, min_p, max_p};
}

namespace {

double report_scale(double lhs, double rhs) {
    return 1.0 + std::abs(lhs) + std::abs(rhs);
}

json matrices_to_json(const std::vector<HermitianMatrix>& ms) {
    json arr = json::array();
    for (const auto& m : ms) arr.push_back(matrix_to_json(m));
    return arr;
}

}  // namespace

InequalityReport trace_pair_gap(const MonotonePairSpec& spec,
                                const HermitianMatrix& a,
                                const HermitianMatrix& x) {
    if (a.dim() != x.dim()) throw ValidationError("trace_pair_gap: dimension mismatch");
    const auto dec = eigh(a);
    const double slack = 1e-12 * (1.0 + std::abs(dec.eigenvalues.front()) +
                                  std::abs(dec.eigenvalues.back()));
    if (dec.eigenvalues.front() < spec.domain.lo - slack ||
        dec.eigenvalues.back() > spec.domain.hi + slack) {
        std::ostringstream os;
        os << "spectrum [" << dec.eigenvalues.front() << ", " << dec.eigenvalues.back()
           << "] outside the pair domain [" << spec.domain.lo << ", " << spec.domain.hi << "]";
        throw DomainError(os.str());
    }

    const ScalarFn f = lookup_scalar_fn(spec.f_name);
    const ScalarFn g = lookup_scalar_fn(spec.g_name);
    const HermitianMatrix fa = dec.apply(f);
    const HermitianMatrix ga = dec.apply(g);

    const ComplexMatrix fx = mul(fa.matrix(), x.matrix());
    const ComplexMatrix gx = mul(ga.matrix(), x.matrix());
    const cxd t_fxgx = trace_of_product(fx, gx);          // tr[f(A) X g(A) X]
    const cxd t_fgx2 = trace_of_product(mul(fa.matrix(), ga.matrix()),
                                        mul(x.matrix(), x.matrix()));  // tr[f(A) g(A) X^2]

    // classification decides the orientation; 512 samples on the domain is
    // plenty for the registry functions
    const PairCheckResult cls = monotone_pair_check(spec, 512, 0x5eed);

    InequalityReport rep;
    rep.inequality_id = "pair:" + spec.f_name + ":" + spec.g_name;
    if (cls.cls == PairClass::antimonotone) {
        rep.lhs = t_fxgx.real();
        rep.rhs = t_fgx2.real();
    } else {
        rep.lhs = t_fgx2.real();
        rep.rhs = t_fxgx.real();
    }
    rep.gap = rep.lhs - rep.rhs;
    rep.scale = report_scale(rep.lhs, rep.rhs);
    rep.imag_residue = std::max(std::abs(t_fxgx.imag()), std::abs(t_fgx2.imag()));
    rep.witness = json{
        {"inequality", rep.inequality_id},
        {"f", spec.f_name},
        {"g", spec.g_name},
        {"classification", to_string(cls.cls)},
        {"dim", a.dim()},
        {"domain", {spec.domain.lo, spec.domain.hi}},
        {"states", matrices_to_json({a, x})},
        {"s", 0.0},
        {"seed", 0},
        {"lhs", rep.lhs},
        {"rhs", rep.rhs},
        {"gap", rep.gap},
    };
    return rep;
}

HermitianMatrix jensen_gap(const std::vector<ComplexMatrix>& c_list,
                           const std::vector<HermitianMatrix>& x_list) {
    if (c_list.empty() || c_list.size() != x_list.size())
        throw ValidationError("jensen_gap needs matching nonempty operator lists");
    const std::size_t d = c_list.front().dim();
    for (const auto& c : c_list)
        if (c.dim() != d) throw ValidationError("jensen_gap: dimension mismatch");
    for (const auto& x : x_list)
        if (x.dim() != d) throw ValidationError("jensen_gap: dimension mismatch");

    ComplexMatrix partition(d);
    for (const auto& c : c_list) {
        const ComplexMatrix ca = c.adjoint();
        partition += mul(ca, c);
    }
    const double residual = max_abs_diff(partition, ComplexMatrix::identity(d));
    if (residual > 1e-8) {
        std::ostringstream os;
        os << "sum C_i^dagger C_i deviates from the identity by " << residual;
        throw ValidationError(os.str());
    }

    ComplexMatrix second_moment(d);  // sum C^dagger X^2 C, via (XC)^dagger (XC)
    ComplexMatrix first_moment(d);   // sum C^dagger X C
    for (std::size_t i = 0; i < c_list.size(); ++i) {
        const ComplexMatrix xc = mul(x_list[i].matrix(), c_list[i]);
        const ComplexMatrix ca = c_list[i].adjoint();
        second_moment += mul(xc.adjoint(), xc);
        first_moment += mul(ca, xc);
    }
    return HermitianMatrix(second_moment - mul(first_moment, first_moment));
}

namespace {

struct TheoremOperators {
    HermitianMatrix t1;      // sum pi_i A_i (log A_i)^2
    HermitianMatrix b;       // sum pi_i A_i log A_i
    HermitianMatrix mix;     // sum pi_i A_i
    bool support_restricted = false;
};

TheoremOperators theorem_operators(const std::vector<HermitianMatrix>& a_list,
                                   const Prior& prior) {
    const std::size_t d = a_list.front().dim();
    ComplexMatrix t1(d), b(d), mix(d);
    bool restricted = false;
    for (std::size_t i = 0; i < a_list.size(); ++i) {
        if (prior[i] == 0.0) continue;
        const auto dec = eigh(a_list[i]);
        restricted |= dec.has_zero_eigenvalue();
        // x (log x)^2 and x log x extend continuously by 0 at x = 0
        const HermitianMatrix alog2 =
            dec.apply([](double x) { return x * std::log(x) * std::log(x); }, true);
        const HermitianMatrix alog =
            dec.apply([](double x) { return x * std::log(x); }, true);
        t1.add_scaled(cxd{prior[i], 0.0}, alog2.matrix());
        b.add_scaled(cxd{prior[i], 0.0}, alog.matrix());
        mix.add_scaled(cxd{prior[i], 0.0}, a_list[i].matrix());
    }
    return TheoremOperators{HermitianMatrix(std::move(t1)), HermitianMatrix(std::move(b)),
                            HermitianMatrix(std::move(mix)), restricted};
}

}  // namespace

InequalityReport concavity_trace_gap(const std::vector<HermitianMatrix>& a_list,
                                     const Prior& prior, double s) {
    if (a_list.empty()) throw ValidationError("concavity_trace_gap needs at least one operator");
    if (prior.size() != a_list.size())
        throw ValidationError("prior length does not match the operator list");
    if (!(s > -1.0)) throw DomainError("concavity_trace_gap requires s > -1");
    const std::size_t d = a_list.front().dim();
    for (const auto& a : a_list)
        if (a.dim() != d) throw ValidationError("concavity_trace_gap: dimension mismatch");

    TheoremOperators ops = theorem_operators(a_list, prior);
    const auto mix_dec = eigh(ops.mix);
    bool restricted = ops.support_restricted || mix_dec.has_zero_eigenvalue();
    const HermitianMatrix mix_s =
        mix_dec.apply([s](double x) { return std::pow(x, s); }, true);
    const HermitianMatrix mix_sm1 =
        mix_dec.apply([s](double x) { return std::pow(x, s - 1.0); }, true);

    const cxd lhs_tr = trace_of_product(mix_s.matrix(), ops.t1.matrix());
    const cxd rhs_tr = trace_of_product(mix_sm1.matrix(), mul(ops.b.matrix(), ops.b.matrix()));

    InequalityReport rep;
    rep.inequality_id = "theorem";
    rep.lhs = lhs_tr.real();
    rep.rhs = rhs_tr.real();
    rep.gap = rep.lhs - rep.rhs;
    rep.scale = report_scale(rep.lhs, rep.rhs);
    rep.imag_residue = std::max(std::abs(lhs_tr.imag()), std::abs(rhs_tr.imag()));
    rep.support_restricted = restricted;
    return rep;
}

namespace {

// Both formulations on one channel instance. The theorem route works on
// A_i = S_i^{1/(1+s)} via their own eigensystems; the Eq-style route goes
// through the matrix entropy H and explicit matrix products, so agreement
// is a genuine cross-check of the spectral calculus.
struct DualRoute {
    InequalityReport theorem;
    InequalityReport entropy_form;
};

DualRoute dual_route(const Channel& ch, const Prior& prior, double s) {
    if (!(s > -1.0)) throw DomainError("requires s > -1");
    const double gamma = 1.0 / (1.0 + s);
    std::vector<HermitianMatrix> a_list;
    a_list.reserve(ch.alphabet_size());
    for (std::size_t i = 0; i < ch.alphabet_size(); ++i)
        a_list.push_back(spectral_pow(ch.state(i).hermitian(), gamma, true));

    DualRoute out{concavity_trace_gap(a_list, prior, s), {}};

    // entropy formulation: fresh decompositions of the reconstructed A_i
    const std::size_t d = ch.dim();
    ComplexMatrix term1(d), entropy_sum(d), mix(d);
    bool restricted = false;
    for (std::size_t i = 0; i < a_list.size(); ++i) {
        if (prior[i] == 0.0) continue;
        const HermitianMatrix log_a = spectral_log(a_list[i], true);
        restricted |= eigh(a_list[i]).has_zero_eigenvalue();
        const ComplexMatrix log_sq = mul(log_a.matrix(), log_a.matrix());
        term1.add_scaled(cxd{prior[i], 0.0}, mul(a_list[i].matrix(), log_sq));
        entropy_sum.add_scaled(cxd{prior[i], 0.0}, matrix_entropy(a_list[i]).matrix());
        mix.add_scaled(cxd{prior[i], 0.0}, a_list[i].matrix());
    }
    const auto mix_dec = eigh(HermitianMatrix(mix));
    restricted |= mix_dec.has_zero_eigenvalue();
    const HermitianMatrix mix_s = mix_dec.apply([s](double x) { return std::pow(x, s); }, true);
    const HermitianMatrix mix_sm1 =
        mix_dec.apply([s](double x) { return std::pow(x, s - 1.0); }, true);

    const cxd lhs_tr = trace_of_product(mix_s.matrix(), term1);
    const cxd rhs_tr = trace_of_product(mix_sm1.matrix(), mul(entropy_sum, entropy_sum));

    InequalityReport& rep = out.entropy_form;
    rep.inequality_id = "eq3";
    rep.lhs = lhs_tr.real();
    rep.rhs = rhs_tr.real();
    rep.gap = rep.lhs - rep.rhs;
    rep.scale = report_scale(rep.lhs, rep.rhs);
    rep.imag_residue = std::max(std::abs(lhs_tr.imag()), std::abs(rhs_tr.imag()));
    rep.support_restricted = restricted;

    const double delta = std::max({std::abs(out.theorem.lhs - rep.lhs),
                                   std::abs(out.theorem.rhs - rep.rhs),
                                   std::abs(out.theorem.gap - rep.gap)});
    out.theorem.formulation_delta = delta;
    rep.formulation_delta = delta;
    return out;
}

json instance_witness(const FuzzInstance& inst, const InequalityReport& rep) {
    json w = save_channel(inst.channel, inst.prior);
    w["s"] = inst.s;
    w["seed"] = inst.campaign_seed;
    w["instance"] = inst.index;
    w["inequality"] = rep.inequality_id;
    w["lhs"] = rep.lhs;
    w["rhs"] = rep.rhs;
    w["gap"] = rep.gap;
    return w;
}

}  // namespace

InequalityReport eq3_trace_gap(const Channel& ch, const Prior& prior, double s) {
    DualRoute routes = dual_route(ch, prior, s);
    InequalityReport rep = routes.entropy_form;
    if (*rep.formulation_delta > 1e-10 * rep.scale) {
        std::ostringstream os;
        os << "formulations disagree: |delta| = " << *rep.formulation_delta
           << " exceeds 1e-10 * " << rep.scale;
        throw Error(os.str());
    }
    return rep;
}

Ensemble ensemble_from_string(const std::string& name) {
    if (name == "mixed" || name == "haar-mixed") return Ensemble::haar_mixed;
    if (name == "rank-deficient") return Ensemble::rank_deficient;
    if (name == "diagonal") return Ensemble::diagonal;
    if (name == "near-identical") return Ensemble::near_identical;
    throw ValidationError("unknown ensemble '" + name + "'");
}

const char* to_string(Ensemble e) {
    switch (e) {
        case Ensemble::haar_mixed: return "haar-mixed";
        case Ensemble::rank_deficient: return "rank-deficient";
        case Ensemble::diagonal: return "diagonal";
        default: return "near-identical";
    }
}

namespace {

// normalized G G^dagger, optionally rank-truncated
HermitianMatrix wishart_state(Rng& rng, std::size_t d, std::size_t rank) {
    ComplexMatrix g(d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < rank; ++j) g(i, j) = rng.complex_normal();
    ComplexMatrix s = mul(g, g.adjoint());
    const double tr = s.trace().real();
    s *= cxd{1.0 / tr, 0.0};
    return HermitianMatrix(std::move(s));
}

// blend toward the maximally mixed state so eigenvalues stay >= ~2e-6;
// assertion-mode instances must keep log A_i well defined
HermitianMatrix floor_state(const HermitianMatrix& s) {
    const std::size_t d = s.dim();
    const double eps = 2e-6;
    ComplexMatrix m = s.matrix();
    m *= cxd{1.0 / (1.0 + eps * static_cast<double>(d)), 0.0};
    const double diag = eps / (1.0 + eps * static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i) m(i, i) += diag;
    return HermitianMatrix(std::move(m));
}

DensityMatrix sample_state(Rng& rng, std::size_t d, Ensemble ensemble,
                           const HermitianMatrix* common) {
    switch (ensemble) {
        case Ensemble::haar_mixed:
            return DensityMatrix(floor_state(wishart_state(rng, d, d)));
        case Ensemble::rank_deficient: {
            const std::size_t rank = 1 + rng.integer(d);
            return DensityMatrix(wishart_state(rng, d, rank));
        }
        case Ensemble::diagonal: {
            auto p = rng.dirichlet(d);
            double total = 0.0;
            for (auto& x : p) {
                x = std::max(x, 1e-3);  // keep the scalar oracle clip-free
                total += x;
            }
            for (auto& x : p) x /= total;
            return DensityMatrix::diagonal(p);
        }
        case Ensemble::near_identical:
        default: {
            const double eps = 1e-3;
            HermitianMatrix perturbation = wishart_state(rng, d, d);
            HermitianMatrix s = *common;
            s *= (1.0 - eps);
            s.add_scaled(eps, perturbation);
            return DensityMatrix(floor_state(s));
        }
    }
}

}  // namespace

FuzzInstance make_instance(const FuzzConfig& cfg, std::uint64_t index) {
    Rng rng(mix_seed(cfg.seed, index));
    const std::size_t a =
        static_cast<std::size_t>(cfg.a_min) + rng.integer(cfg.a_max - cfg.a_min + 1);
    const std::size_t d =
        static_cast<std::size_t>(cfg.d_min) + rng.integer(cfg.d_max - cfg.d_min + 1);
    double s;
    if (cfg.s_grid > 1) {
        const auto k = rng.integer(static_cast<std::uint64_t>(cfg.s_grid));
        s = cfg.s_min + (cfg.s_max - cfg.s_min) * static_cast<double>(k) /
                            static_cast<double>(cfg.s_grid - 1);
    } else if (cfg.s_grid == 1) {
        s = cfg.s_min;
    } else {
        s = rng.uniform(cfg.s_min, cfg.s_max);
    }

    std::optional<HermitianMatrix> common;
    if (cfg.ensemble == Ensemble::near_identical)
        common = floor_state(wishart_state(rng, d, d));

    std::vector<DensityMatrix> states;
    states.reserve(a);
    for (std::size_t i = 0; i < a; ++i)
        states.push_back(sample_state(rng, d, cfg.ensemble, common ? &*common : nullptr));

    Prior prior(rng.dirichlet(a));
    return FuzzInstance{Channel(std::move(states)), std::move(prior), s, cfg.seed, index};
}

const std::map<std::string, InequalityEvaluator>& evaluator_registry() {
    static const std::map<std::string, InequalityEvaluator> registry = [] {
        std::map<std::string, InequalityEvaluator> reg;
        reg["theorem"] = [](const FuzzInstance& inst) {
            InequalityReport rep = dual_route(inst.channel, inst.prior, inst.s).theorem;
            rep.witness = instance_witness(inst, rep);
            return rep;
        };
        reg["eq3"] = [](const FuzzInstance& inst) {
            InequalityReport rep = eq3_trace_gap(inst.channel, inst.prior, inst.s);
            rep.witness = instance_witness(inst, rep);
            return rep;
        };
        reg["jensen"] = [](const FuzzInstance& inst) {
            const double gamma = 1.0 / (1.0 + inst.s);
            const std::size_t a = inst.channel.alphabet_size();
            const std::size_t d = inst.channel.dim();
            std::vector<SpectralDecomposition> decs;
            decs.reserve(a);
            ComplexMatrix mix(d);
            for (std::size_t i = 0; i < a; ++i) {
                decs.push_back(eigh(inst.channel.state(i).hermitian()));
                if (inst.prior[i] == 0.0) continue;
                mix.add_scaled(
                    cxd{inst.prior[i], 0.0},
                    decs.back().apply([gamma](double x) { return std::pow(x, gamma); }, true).matrix());
            }
            const HermitianMatrix mix_inv_sqrt =
                spectral_pow(HermitianMatrix(std::move(mix)), -0.5, true);
            std::vector<ComplexMatrix> c_list;
            std::vector<HermitianMatrix> x_list;
            for (std::size_t i = 0; i < a; ++i) {
                const double pi = inst.prior[i];
                const HermitianMatrix root = decs[i].apply(
                    [gamma, pi](double x) { return std::sqrt(pi * std::pow(x, gamma)); }, true);
                c_list.push_back(mul(root.matrix(), mix_inv_sqrt.matrix()));
                x_list.push_back(decs[i].apply(
                    [gamma](double x) { return gamma * std::log(x); }, true));
            }
            const HermitianMatrix gap_matrix = jensen_gap(c_list, x_list);
            const double min_eig = eigh(gap_matrix).eigenvalues.front();

            InequalityReport rep;
            rep.inequality_id = "jensen";
            rep.lhs = min_eig;
            rep.rhs = 0.0;
            rep.gap = min_eig;
            rep.scale = report_scale(min_eig, 0.0);
            rep.witness = instance_witness(inst, rep);
            return rep;
        };
        reg["chain-mid"] = [](const FuzzInstance& inst) {
            const double gamma = 1.0 / (1.0 + inst.s);
            std::vector<HermitianMatrix> a_list;
            for (std::size_t i = 0; i < inst.channel.alphabet_size(); ++i)
                a_list.push_back(spectral_pow(inst.channel.state(i).hermitian(), gamma, true));
            TheoremOperators ops = theorem_operators(a_list, inst.prior);
            const auto mix_dec = eigh(ops.mix);
            const double s = inst.s;
            const HermitianMatrix mix_s =
                mix_dec.apply([s](double x) { return std::pow(x, s); }, true);
            const HermitianMatrix mix_inv =
                mix_dec.apply([](double x) { return 1.0 / x; }, true);
            const cxd lhs_tr = trace_of_product(mix_s.matrix(), ops.t1.matrix());
            const cxd rhs_tr = trace_of_product(
                mix_s.matrix(), mul(ops.b.matrix(), mul(mix_inv.matrix(), ops.b.matrix())));

            InequalityReport rep;
            rep.inequality_id = "chain-mid";
            rep.lhs = lhs_tr.real();
            rep.rhs = rhs_tr.real();
            rep.gap = rep.lhs - rep.rhs;
            rep.scale = report_scale(rep.lhs, rep.rhs);
            rep.imag_residue = std::max(std::abs(lhs_tr.imag()), std::abs(rhs_tr.imag()));
            rep.support_restricted =
                ops.support_restricted || mix_dec.has_zero_eigenvalue();
            rep.witness = instance_witness(inst, rep);
            return rep;
        };
        reg["pair-final"] = [](const FuzzInstance& inst) {
            const double gamma = 1.0 / (1.0 + inst.s);
            std::vector<HermitianMatrix> a_list;
            for (std::size_t i = 0; i < inst.channel.alphabet_size(); ++i)
                a_list.push_back(spectral_pow(inst.channel.state(i).hermitian(), gamma, true));
            TheoremOperators ops = theorem_operators(a_list, inst.prior);
            const auto mix_dec = eigh(ops.mix);
            // (x^s, x^-1) is an antimonotone pair on the positive axis
            std::ostringstream fname;
            fname << "pow:" << std::setprecision(17) << inst.s;
            MonotonePairSpec spec{fname.str(), "inv",
                                  Interval{mix_dec.eigenvalues.front() * 0.5,
                                           mix_dec.eigenvalues.back() * 2.0 + 1e-9}};
            InequalityReport rep = trace_pair_gap(spec, ops.mix, ops.b);
            rep.inequality_id = "pair-final";
            rep.witness = instance_witness(inst, rep);
            return rep;
        };
        return reg;
    }();
    return registry;
}

namespace {

void validate_config(const FuzzConfig& cfg) {
    if (cfg.instance_count < 1) throw ValidationError("instance_count must be >= 1");
    if (cfg.a_min < 1 || cfg.a_max < cfg.a_min) throw ValidationError("bad alphabet range");
    if (cfg.d_min < 1 || cfg.d_max < cfg.d_min) throw ValidationError("bad dimension range");
    if (!(cfg.s_min > -1.0)) throw ValidationError("s_min must be > -1");
    if (!(cfg.s_max >= cfg.s_min)) throw ValidationError("s range is empty");
    if (cfg.s_grid < 0) throw ValidationError("s_grid must be >= 0");
}

// Greedy witness reduction: drop states, shrink the dimension, pull states
// toward their mean. A move is kept only while the violation survives.
struct ShrinkState {
    std::vector<HermitianMatrix> states;
    std::vector<double> prior;
    double s;
};

std::optional<DensityMatrix> make_density(const HermitianMatrix& m) {
    try {
        return DensityMatrix(m);
    } catch (const Error&) {
        return std::nullopt;
    }
}

std::optional<InequalityReport> eval_shrunk(const InequalityEvaluator& eval,
                                            const ShrinkState& st,
                                            const FuzzInstance& original) {
    try {
        std::vector<DensityMatrix> states;
        states.reserve(st.states.size());
        for (const auto& m : st.states) {
            auto dm = make_density(m);
            if (!dm) return std::nullopt;
            states.push_back(std::move(*dm));
        }
        FuzzInstance inst{Channel(std::move(states)), Prior(st.prior), st.s,
                          original.campaign_seed, original.index};
        return eval(inst);
    } catch (const Error&) {
        return std::nullopt;
    }
}

InequalityReport shrink_witness(const InequalityEvaluator& eval,
                                const FuzzInstance& inst,
                                InequalityReport worst, double tau) {
    ShrinkState st;
    for (std::size_t i = 0; i < inst.channel.alphabet_size(); ++i)
        st.states.push_back(inst.channel.state(i).hermitian());
    st.prior = inst.prior.weights();
    st.s = inst.s;

    auto violates = [tau](const InequalityReport& r) { return r.gap < -tau * r.scale; };

    bool improved = true;
    int passes = 0;
    while (improved && ++passes <= 64) {
        improved = false;

        // drop one state
        for (std::size_t i = 0; st.states.size() > 1 && i < st.states.size(); ++i) {
            if (st.prior[i] >= 1.0) continue;
            ShrinkState cand = st;
            cand.states.erase(cand.states.begin() + i);
            const double rest = 1.0 - cand.prior[i];
            cand.prior.erase(cand.prior.begin() + i);
            for (auto& w : cand.prior) w /= rest;
            if (auto rep = eval_shrunk(eval, cand, inst); rep && violates(*rep)) {
                st = std::move(cand);
                worst = std::move(*rep);
                improved = true;
                break;
            }
        }
        if (improved) continue;

        // shave the last row/column off every state
        if (const std::size_t d = st.states.front().dim(); d > 1) {
            ShrinkState cand = st;
            bool ok = true;
            for (auto& m : cand.states) {
                ComplexMatrix sub(d - 1);
                for (std::size_t i = 0; ok && i + 1 < d; ++i)
                    for (std::size_t j = 0; j + 1 < d; ++j) sub(i, j) = m(i, j);
                const double tr = sub.trace().real();
                if (tr < 0.2) {
                    ok = false;
                    break;
                }
                sub *= cxd{1.0 / tr, 0.0};
                m = floor_state(HermitianMatrix(std::move(sub)));
            }
            if (ok) {
                if (auto rep = eval_shrunk(eval, cand, inst); rep && violates(*rep)) {
                    st = std::move(cand);
                    worst = std::move(*rep);
                    improved = true;
                    continue;
                }
            }
        }

        // halve the spread around the mean
        if (st.states.size() > 1) {
            ShrinkState cand = st;
            ComplexMatrix mean(st.states.front().dim());
            for (const auto& m : cand.states)
                mean.add_scaled(cxd{1.0 / static_cast<double>(cand.states.size()), 0.0},
                                m.matrix());
            const HermitianMatrix center{ComplexMatrix(mean)};
            double moved = 0.0;
            for (auto& m : cand.states) {
                moved += max_abs_diff(m.matrix(), center.matrix());
                HermitianMatrix blend = m;
                blend *= 0.5;
                blend.add_scaled(0.5, center);
                m = blend;
            }
            if (moved > 1e-12) {
                if (auto rep = eval_shrunk(eval, cand, inst); rep && violates(*rep)) {
                    st = std::move(cand);
                    worst = std::move(*rep);
                    improved = true;
                }
            }
        }
    }
    return worst;
}

}  // namespace

FuzzSummary fuzz_with(const InequalityEvaluator& eval, const FuzzConfig& cfg,
                      const std::string& inequality_id) {
    validate_config(cfg);
    const double tau = Config::get().gap_tolerance;

    FuzzSummary summary;
    summary.inequality_id = inequality_id;
    summary.exploratory = cfg.s_min < 0.0;
    summary.min_gap = std::numeric_limits<double>::infinity();

    std::optional<FuzzInstance> worst_instance;
    for (int i = 0; i < cfg.instance_count; ++i) {
        FuzzInstance inst = make_instance(cfg, static_cast<std::uint64_t>(i));
        InequalityReport rep;
        try {
            rep = eval(inst);
        } catch (const Error&) {
            ++summary.evaluation_errors;
            continue;
        }
        ++summary.instances;
        if (rep.gap < -tau * rep.scale) ++summary.violations;
        if (rep.gap < summary.min_gap) {
            summary.min_gap = rep.gap;
            summary.worst = rep;
            worst_instance = std::move(inst);
        }
    }

    if (worst_instance && summary.worst.gap < -tau * summary.worst.scale)
        summary.worst = shrink_witness(eval, *worst_instance, summary.worst, tau);
    return summary;
}

FuzzSummary fuzz(const std::string& inequality_id, const FuzzConfig& cfg) {
    const auto& registry = evaluator_registry();
    const auto it = registry.find(inequality_id);
    if (it == registry.end())
        throw ValidationError("unknown inequality '" + inequality_id + "'");
    return fuzz_with(it->second, cfg, inequality_id);
}

namespace {

bool same_bits(double a, double b) {
    return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

ReplayResult replay_witness(const json& witness) {
    if (!witness.is_object() || !witness.contains("inequality"))
        throw ValidationError("witness document needs an \"inequality\" field");
    const auto id = witness.at("inequality").get<std::string>();
    const double s = witness.value("s", 0.0);

    InequalityReport rep;
    if (id.rfind("pair:", 0) == 0 && !witness.contains("prior")) {
        // raw monotone-pair witness: states = [A, X]
        const auto& states = witness.at("states");
        if (!states.is_array() || states.size() != 2)
            throw ValidationError("pair witness needs exactly two matrices");
        const HermitianMatrix a = parse_matrix(states.at(0), "matrix A");
        const HermitianMatrix x = parse_matrix(states.at(1), "matrix X");
        const auto dom = witness.at("domain");
        MonotonePairSpec spec{witness.at("f").get<std::string>(),
                              witness.at("g").get<std::string>(),
                              Interval{dom.at(0).get<double>(), dom.at(1).get<double>()}};
        rep = trace_pair_gap(spec, a, x);
        rep.inequality_id = id;
    } else {
        ChannelDocument doc = load_channel(witness);
        const auto& registry = evaluator_registry();
        const auto it = registry.find(id);
        if (it == registry.end())
            throw ValidationError("unknown inequality '" + id + "' in witness");
        FuzzInstance inst{std::move(doc.channel), std::move(doc.prior), s,
                          witness.value("seed", std::uint64_t{0}),
                          witness.value("instance", std::uint64_t{0})};
        rep = it->second(inst);
    }

    bool exact = true;
    if (witness.contains("lhs"))
        exact = exact && same_bits(witness.at("lhs").get<double>(), rep.lhs);
    if (witness.contains("rhs"))
        exact = exact && same_bits(witness.at("rhs").get<double>(), rep.rhs);
    return ReplayResult{std::move(rep), exact};
}

}  // namespace cqexp
