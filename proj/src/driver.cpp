#include "driver.hpp"

#include "diagonal.hpp"
#include "error.hpp"
#include "laws.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sstream>

namespace univsim {

using json = nlohmann::ordered_json;

std::uint64_t default_budget() {
    constexpr std::uint64_t fallback = 1000000;
    const char* env = std::getenv("UNIVSIM_BUDGET");
    if (!env || !*env) return fallback;
    std::uint64_t v = 0;
    std::string_view s(env);
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size() || v == 0) return fallback;
    return v;
}

const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"laws",    "universal",      "reduce", "nogo",          "parsimony",
                                            "lawvere", "unreachability", "cantor", "functor-check", "verify"};
    return c;
}

json rel_json(const FinRel& f) {
    json pairs = json::array();
    for (auto [a, x] : f.pairs()) pairs.push_back({f.dom().label(a), f.cod().label(x)});
    return {{"dom", f.dom().id()}, {"cod", f.cod().id()}, {"pairs", pairs}};
}

namespace {

std::string hex(std::uint64_t h) {
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json state_json(const FinRel& s) {
    json out = json::array();
    for (auto [a, x] : s.pairs()) {
        (void)a;
        out.push_back(s.cod().label(x));
    }
    return out;
}

json set_json(const FinSet& s) { return {{"id", s.id()}, {"elements", s.labels()}}; }

json order_json(const Preorder& p) {
    json edges = json::array();
    for (auto [i, j] : p.edges()) edges.push_back({p.carrier().label(i), p.carrier().label(j)});
    return {{"carrier", p.carrier().id()}, {"geq", edges}};
}

json sim_json(const Simulator& s) {
    return {{"programs", s.P().id()}, {"compiler", rel_json(s.sT())}, {"contexts", rel_json(s.sC())}};
}

json processing_json(const Processing& q) {
    return {{"programs", q.P.id()}, {"target", rel_json(q.qT)}, {"context", rel_json(q.qC)}};
}

std::string q(const Rational& r) { return to_string(r); }

// Shared shape of every command's outcome before it is wrapped into a report.
struct Outcome {
    std::string verdict;
    bool holds = false;
    json certificate = nullptr;
    std::optional<bool> verified;
    std::optional<std::string> instance;
    std::vector<std::string> notes;
    json details = json::object();
    std::uint64_t used = 0;
    bool exhaustive = true;
};

void need_args(const std::vector<std::string>& args, std::size_t lo, std::size_t hi, const std::string& usage) {
    if (args.size() < lo || args.size() > hi) fail(Errc::invalid_argument, "usage: " + usage);
}

const Model& need_model(const Model* m, const std::string& cmd) {
    if (!m) fail(Errc::invalid_argument, cmd + " needs --instance FILE");
    return *m;
}

bool same_instance(const TccInstance& a, const TccInstance& b) {
    return a.T() == b.T() && a.C() == b.C() && a.B() == b.B() && a.eval() == b.eval() && a.brel() == b.brel();
}

// ---- commands ----

Outcome cmd_laws(const Model* m, const std::vector<std::string>& args, const RunOptions& opt) {
    std::vector<std::pair<std::string, TccInstance>> insts;
    std::vector<FinSet> pool{FinSet::unit(), FinSet::make("A1", {"x"}), FinSet::make("A2", {"x", "y"}),
                             FinSet::make("A3", {"x", "y", "z"}), FinSet::make("A5", {"a", "b", "c", "d", "e"})};
    Outcome o;
    if (m) {
        for (const auto& [name, s] : m->sets)
            if (!s.is_product() && s.size() <= 5 && name.find('.') == std::string::npos) pool.push_back(s);
        if (args.empty())
            for (const auto& n : m->tcc_order) insts.emplace_back(n, m->instance(n));
        for (const auto& a : args) insts.emplace_back(a, m->instance(a));
        if (insts.size() == 1) o.instance = insts[0].first;
    } else {
        if (!args.empty()) fail(Errc::invalid_argument, "laws: naming instances needs --instance FILE");
        for (auto& e : regression_catalog()) insts.emplace_back(e.name, e.inst);
        o.notes.push_back("no document given; the built-in regression catalog was used");
    }
    std::mt19937 rng(static_cast<std::mt19937::result_type>(opt.seed));
    LawReport rep = gs_monoidal_laws(pool, rng, 125);
    for (const auto& [name, inst] : insts) rep.merge(instance_laws(inst, rng, 60, opt.search), name + ":");
    json laws = json::array();
    for (const auto& l : rep.laws)
        laws.push_back({{"law", l.name},
                        {"checks", l.checks},
                        {"failures", l.failures},
                        {"antecedents", l.antecedents},
                        {"examples", l.examples},
                        {"informational", l.informational}});
    o.holds = rep.ok();
    o.verdict = o.holds ? "pass" : "fail";
    o.certificate = {{"seed", opt.seed}, {"checks", rep.checks()}, {"failures", rep.failures()}, {"laws", laws}};
    o.used = rep.checks();
    json names = json::array();
    for (const auto& p : insts) names.push_back(p.first);
    o.details["instances"] = names;
    if (!rep.skipped.empty()) {
        o.details["skipped"] = rep.skipped;
        o.notes.push_back("some exhaustive sweeps were skipped for budget; see details.skipped");
    }
    return o;
}

Outcome cmd_universal(const Model& m, const std::vector<std::string>& args, const RunOptions& opt) {
    need_args(args, 1, 1, "universal SIM");
    const NamedSim& ns = m.simulator(args[0]);
    const TccInstance& inst = m.instance(ns.instance);
    Outcome o;
    o.instance = ns.instance;
    WitnessSearch w = find_universality_witness(ns.sim, inst, opt.search);
    o.used = w.candidates;
    o.details["space"] = w.space;
    if (w.witness) {
        o.verdict = "universal";
        o.holds = true;
        o.certificate = {{"reduction", rel_json(*w.witness)}};
        o.verified = check_reduction(*w.witness, Flavor::lax, ns.sim, trivial_simulator(inst), inst);
        o.details["strict"] = check_reduction(*w.witness, Flavor::strict, ns.sim, trivial_simulator(inst), inst);
        o.details["oplax"] = check_reduction(*w.witness, Flavor::oplax, ns.sim, trivial_simulator(inst), inst);
        o.details["singleton"] = is_singleton(ns.sim).has_value();
    } else {
        o.verdict = "not-universal";
        auto opts = reduction_options(ns.sim, inst, Flavor::lax);
        std::size_t t = 0;
        while (t < opts.size() && !opts[t].empty()) ++t;
        ensure(t < opts.size(), "a target without program options exists when no witness exists");
        o.certificate = {{"target", inst.T().label(t)}, {"programs", json::array()}};
        o.verified = reduction_options(ns.sim, inst, Flavor::lax)[t].empty();
        o.notes.push_back("no value of r(" + inst.T().label(t) + "), defined or not, satisfies the lax row condition");
    }
    return o;
}

Outcome cmd_reduce(const Model& m, const std::vector<std::string>& args, const RunOptions& opt) {
    need_args(args, 2, 3, "reduce F G [INSTANCE]");
    const FinRel& f = m.rel(args[0]);
    const FinRel& g = m.rel(args[1]);
    std::string name;
    if (args.size() == 3) {
        name = args[2];
    } else {
        auto n = m.instance_with_targets(f.cod());
        if (!n) fail(Errc::type_mismatch, "no instance has target set " + f.cod().id());
        name = *n;
    }
    const TccInstance& inst = m.instance(name);
    Outcome o;
    o.instance = name;
    ContextResult lax = context_reduces(f, g, inst, Flavor::lax, opt.search);
    ContextResult oplax = context_reduces(f, g, inst, Flavor::oplax, opt.search);
    o.used = lax.candidates + oplax.candidates;
    o.verdict = verdict_name(lax.verdict);
    if (lax.verdict == Verdict::fails && lax.searched == SearchSpace::functional) {
        o.verdict = "unknown";
        o.exhaustive = false;
        o.notes.push_back("no functional context witness; relational witnesses were not searched (use --search all)");
    }
    o.holds = lax.verdict == Verdict::holds;
    if (lax.witness) {
        o.certificate = {{"context", rel_json(*lax.witness)}};
        o.verified = check_context_witness(f, g, *lax.witness, Flavor::lax, inst);
    }
    o.details["searched"] = space_name(lax.searched);
    json op = {{"verdict", verdict_name(oplax.verdict)}, {"context", nullptr}};
    if (oplax.witness) {
        op["context"] = rel_json(*oplax.witness);
        op["verified"] = check_context_witness(f, g, *oplax.witness, Flavor::oplax, inst);
    }
    o.details["oplax"] = op;
    return o;
}

Outcome cmd_nogo(const Model& m, const std::vector<std::string>& args, const RunOptions& opt) {
    need_args(args, 2, 2, "nogo SIM PHI");
    const NamedSim& ns = m.simulator(args[0]);
    const NamedPhi& ph = m.phi(args[1]);
    if (ph.instance != ns.instance) fail(Errc::type_mismatch, "simulator and monotone function live on different instances");
    const TccInstance& inst = m.instance(ns.instance);
    Outcome o;
    o.instance = ns.instance;
    NogoResult r = nogo_check(ns.sim, ph.phi, inst, opt.search);
    bool monotone = r.violations.empty();
    o.holds = r.not_universal && monotone;
    o.verdict = o.holds ? "not-universal" : "inconclusive";
    json image = json::array();
    for (const auto& s : r.image) image.push_back(state_json(s));
    std::size_t arg = 0;
    for (std::size_t t = 0; t < inst.T().size(); ++t)
        if (ph.phi.point[t] > ph.phi.point[arg]) arg = t;
    o.certificate = {{"sup_image", q(r.sup_image)},
                     {"sup_all", q(r.sup_all)},
                     {"image", image},
                     {"argmax_target", inst.T().size() ? json(inst.T().label(arg)) : json(nullptr)}};
    // re-evaluate phi on the image directly
    Rational sup(0);
    bool first = true;
    for (const auto& s : functional_image(ns.sim.sT())) {
        Rational v = ph.phi(s);
        if (first || v > sup) sup = v;
        first = false;
    }
    o.verified = (first || sup == r.sup_image);
    if (!monotone) o.notes.push_back("phi is not monotone under ambient imitation; the bound proves nothing");
    o.details["monotone"] = monotone;
    o.details["violations"] = r.violations.size();
    o.details["witness_search"] = r.universal ? json(*r.universal ? "universal" : "not-universal") : json("budget");
    return o;
}

Outcome cmd_parsimony(const Model& m, const std::vector<std::string>& args, const RunOptions& opt) {
    need_args(args, 2, 2, "parsimony A B");
    const NamedSim& a = m.simulator(args[0]);
    const NamedSim& b = m.simulator(args[1]);
    if (a.instance != b.instance) fail(Errc::type_mismatch, "simulators live on different instances");
    const TccInstance& inst = m.instance(a.instance);
    Outcome o;
    o.instance = a.instance;
    ParsimonyResult r = decide_parsimony(a.sim, b.sim, inst, opt.search);
    o.verdict = parsimony_name(r.kind);
    o.holds = r.kind == ParsimonyKind::found;
    o.used = r.candidates;
    o.details["proof"] = r.proof;
    if (r.morphism) {
        o.certificate = {{"r", rel_json(r.morphism->r)}, {"processing", processing_json(r.morphism->q)}};
        o.verified = verify_morphism(*r.morphism, inst);
    } else if (r.compressed && r.compressed->compressed) {
        json certs = json::array();
        bool ok = true;
        for (const auto& c : r.compressed->certificates) {
            certs.push_back({{"r", rel_json(c.r)}, {"t", state_json(c.t)}, {"g", state_json(c.g)}});
            ok = ok && check_reduction(c.r, Flavor::lax, a.sim, trivial_simulator(inst), inst) &&
                 compose(c.r, c.t) == compose(c.r, c.g) && !(c.t == c.g);
        }
        o.certificate = {{"compressed", args[0]}, {"reductions", r.compressed->reductions}, {"certificates", certs}};
        o.verified = ok;
    } else if (r.kind == ParsimonyKind::none_exists) {
        o.certificate = {{"proof", r.proof}, {"candidates", r.candidates}};
    } else {
        o.exhaustive = false;
    }
    if (r.lax_implies_oplax) o.details["lax_implies_oplax"] = *r.lax_implies_oplax;
    if (r.exhaustive_agrees) o.details["exhaustive_agrees"] = *r.exhaustive_agrees;
    for (const auto& n : r.notes) o.notes.push_back(n);
    return o;
}

ParamDomain domain_of(const RunOptions& opt) {
    return opt.search.space == SearchSpace::all ? ParamDomain::all : ParamDomain::functional;
}

Outcome cmd_lawvere(const Model& m, const std::vector<std::string>& args, const RunOptions& opt) {
    need_args(args, 1, 2, "lawvere G [SIM]");
    const FinRel& g = m.rel(args[0]);
    Outcome o;
    std::string name;
    std::optional<Parametrization> param;
    const ParamDomain d = domain_of(opt);
    if (args.size() == 2) {
        const NamedSim& ns = m.simulator(args[1]);
        name = ns.instance;
        const TccInstance& inst = m.instance(name);
        if (!(g.dom() == inst.B()) || !(g.cod() == inst.B())) fail(Errc::type_mismatch, "g must be an endomorphism of " + inst.B().id());
        Parametrization p = simulator_parametrization(ns.sim, inst);
        if (!(p.P == inst.C())) fail(Errc::type_mismatch, "lawvere needs a simulator whose programs are the contexts");
        CompletenessResult c = check_completeness(p, FinSet::unit(), inst.brel(), d, opt.search);
        o.used = c.maps_checked;
        const ParamDomain other = d == ParamDomain::all ? ParamDomain::functional : ParamDomain::all;
        try {
            Parametrization q = simulator_parametrization(ns.sim, inst);
            CompletenessResult c2 = check_completeness(q, FinSet::unit(), inst.brel(), other, opt.search);
            o.used += c2.maps_checked;
            o.details["other_domain"] = {{"domain", param_domain_name(other)}, {"complete", c2.complete}};
            o.details["domains_diverge"] = c2.complete != c.complete;
        } catch (const Error& e) {
            if (e.code() != Errc::budget_exceeded) throw;
            o.details["other_domain"] = {{"domain", param_domain_name(other)}, {"skipped", e.what()}};
        }
        if (c.complete) param = std::move(p);
        else o.details["counterexample"] = rel_json(*c.counterexample);
        o.details["parametrization"] = "simulator " + args[1];
    } else {
        auto n = m.instance_with_behaviors(g.dom());
        if (!n) fail(Errc::type_mismatch, "no instance has behavior set " + g.dom().id());
        name = *n;
        const TccInstance& inst = m.instance(name);
        const FinSet& C = inst.C();
        const FinSet CC = FinSet::product(C, C);
        std::uint64_t total = map_count(CC.size(), inst.B().size(), ParamDomain::total);
        require_budget(total, opt.search, "parametrizations C*C -> B");
        std::uint64_t tried = 0;
        for (Odometer od(std::vector<std::size_t>(CC.size(), inst.B().size())); !od.done() && !param; od.next()) {
            ++tried;
            Parametrization p = make_parametrization(C, C, map_from_digits(CC, inst.B(), od.digits(), ParamDomain::total));
            CompletenessResult c = check_completeness(p, FinSet::unit(), inst.brel(), d, opt.search);
            o.used += c.maps_checked;
            if (c.complete) param = std::move(p);
        }
        o.details["parametrizations_checked"] = tried;
        o.details["parametrization"] = "searched over total maps C*C -> B";
    }
    o.instance = name;
    const TccInstance& inst = m.instance(name);
    o.details["domain"] = param_domain_name(d);
    if (!param) {
        o.verdict = "no-parametrization";
        auto qfp = find_quasi_fixed_point(g, inst.brel(), StateSpace::deterministic);
        o.certificate = {{"complete_parametrization", nullptr},
                         {"g_has_deterministic_quasi_fixed_point", qfp.has_value()}};
        if (!qfp) o.notes.push_back("g has no deterministic quasi-fixed point, so no complete parametrization can exist");
        return o;
    }
    LawvereResult r = lawvere_quasi_fixed_point(*param, FinSet::unit(), g, inst.brel());
    o.verdict = r.verified ? "quasi-fixed-point" : "construction-failed";
    o.holds = r.verified;
    o.certificate = {{"F", rel_json(param->F)},
                     {"f", rel_json(r.f)},
                     {"c_f", rel_json(r.c_f)},
                     {"point", state_json(r.point)},
                     {"total", r.total}};
    o.verified = check_program(*param, r.f, r.c_f, inst.brel()) && is_quasi_fixed_point(r.point, g, inst.brel());
    return o;
}

Outcome cmd_unreachability(const Model& m, const std::vector<std::string>& args, const RunOptions& opt) {
    need_args(args, 1, 1, "unreachability SIM");
    const NamedSim& ns = m.simulator(args[0]);
    const TccInstance& inst = m.instance(ns.instance);
    Outcome o;
    o.instance = ns.instance;
    UnreachabilityResult u = has_unreachability(ns.sim, inst, domain_of(opt), opt.search);
    o.used = u.maps_checked;
    o.verdict = u.unreachable ? "unreachable" : "reachable";
    o.holds = u.unreachable;
    o.details["domain"] = param_domain_name(u.domain);
    if (u.map) {
        o.certificate = {{"map", rel_json(*u.map)}};
        Parametrization p = simulator_parametrization(ns.sim, inst);
        o.verified = !find_program(p, FinSet::unit(), *u.map, inst.brel()).has_value();
    } else {
        o.notes.push_back("every map C -> B in the " + std::string(param_domain_name(u.domain)) + " domain has a program");
    }
    // the other quantification domain, so a divergence between the two shows up in the report
    const ParamDomain other = u.domain == ParamDomain::all ? ParamDomain::functional : ParamDomain::all;
    try {
        UnreachabilityResult v = has_unreachability(ns.sim, inst, other, opt.search);
        o.used += v.maps_checked;
        o.details["other_domain"] = {{"domain", param_domain_name(other)}, {"unreachable", v.unreachable}};
        o.details["domains_diverge"] = v.unreachable != u.unreachable;
        if (v.unreachable != u.unreachable)
            o.notes.push_back(std::string("the ") + param_domain_name(other) + " domain gives the opposite answer");
    } catch (const Error& e) {
        if (e.code() != Errc::budget_exceeded) throw;
        o.details["other_domain"] = {{"domain", param_domain_name(other)}, {"skipped", e.what()}};
    }
    return o;
}

Outcome cmd_cantor(const std::vector<std::string>& args, const RunOptions& opt) {
    need_args(args, 0, 1, "cantor [--n N]");
    std::size_t n = opt.n.value_or(2);
    if (!args.empty()) {
        std::size_t v = 0;
        auto [p, ec] = std::from_chars(args[0].data(), args[0].data() + args[0].size(), v);
        if (ec != std::errc() || p != args[0].data() + args[0].size()) fail(Errc::invalid_argument, "cantor: N must be a number");
        n = v;
    }
    if (n < 1 || n > 3) fail(Errc::invalid_argument, "cantor needs 1 <= n <= 3");
    CantorReport r = cantor_report(n, opt.search);
    Outcome o;
    o.used = r.simulators_checked + r.compilers_checked;
    o.holds = r.universal_found == 0;
    o.verdict = o.holds ? "no-universal-simulator" : "universal-simulator-found";
    o.exhaustive = r.full_context_search;
    o.certificate = {{"n", n},
                     {"targets", r.targets},
                     {"simulators_checked", r.simulators_checked},
                     {"full_context_search", r.full_context_search},
                     {"negation_quasi_fixed_point_deterministic",
                      r.negation_qfp_deterministic ? state_json(*r.negation_qfp_deterministic) : json(nullptr)}};
    o.details = {{"negation_quasi_fixed_point_any",
                  r.negation_qfp_any ? state_json(*r.negation_qfp_any) : json(nullptr)},
                 {"eval_complete_functional_I", r.eval_complete_I},
                 {"eval_complete_functional_C", r.eval_complete_C},
                 {"eval_complete_all_I", r.eval_complete_I_all},
                 {"subfamilies", r.subfamilies},
                 {"compilers_checked", r.compilers_checked},
                 {"surjective", r.surjective},
                 {"equivalence_failures", r.equivalence_failures},
                 {"right_inverse_failures", r.right_inverse_failures}};
    if (!r.full_context_search)
        o.notes.push_back("contexts restricted to the pass-through family; the full context space is too large");
    if (r.negation_qfp_any)
        o.notes.push_back("the empty state imitates anything vacuously, so only deterministic states count");
    // negation has no deterministic quasi-fixed point; replay it directly
    FinSet two = FinSet::make("2", {"0", "1"});
    FinRel neg = FinRel::from_function(two, two, {1, 0});
    o.verified = !is_quasi_fixed_point(point(two, 0), neg, Preorder::equality(two)) &&
                 !is_quasi_fixed_point(point(two, 1), neg, Preorder::equality(two));
    return o;
}

Outcome cmd_functor_check(const Model& m, const std::vector<std::string>& args, const RunOptions& opt) {
    if (args.empty()) fail(Errc::invalid_argument, "usage: functor-check F [SIM...]");
    const TcFunctor& F = m.functor(args[0]);
    Outcome o;
    FunctorCheck c = check_tc_functor(F, opt.search, opt.seed);
    o.used = c.samples + c.relation_pairs;
    o.exhaustive = c.relation_exhaustive;
    json pres = json::array();
    bool preserved = true;
    if (c.ok()) {
        std::vector<std::string> names(args.begin() + 1, args.end());
        if (names.empty())
            for (const auto& [n, s] : m.sims)
                if (same_instance(m.instance(s.instance), F.source())) names.push_back(n);
        for (const auto& n : names) {
            const NamedSim& ns = m.simulator(n);
            if (!same_instance(m.instance(ns.instance), F.source()))
                fail(Errc::type_mismatch, "simulator " + n + " is not on the functor's source instance");
            PreservationResult p = verify_universality_preservation(F, ns.sim, opt.search);
            bool ok = (!p.source_universal || (p.image_universal && p.witness_transported)) && p.singleton_preserved;
            preserved = preserved && ok;
            pres.push_back({{"simulator", n},
                            {"source_universal", p.source_universal},
                            {"image_universal", p.image_universal},
                            {"witness_transported", p.witness_transported},
                            {"image_witness", p.image_witness ? rel_json(*p.image_witness) : json(nullptr)}});
        }
    }
    o.holds = c.ok() && preserved;
    o.verdict = o.holds ? "valid" : "invalid";
    o.certificate = {{"objects", c.objects_ok},
                     {"bijections", c.bijections_ok},
                     {"functorial", c.functorial},
                     {"gs_monoidal", c.gs_monoidal},
                     {"relation_preserved", c.relation_preserved},
                     {"relation_exhaustive", c.relation_exhaustive},
                     {"preservation", pres}};
    o.details["violations"] = c.violations;
    o.details["samples"] = c.samples;
    o.details["relation_pairs"] = c.relation_pairs;
    if (!c.relation_exhaustive) o.notes.push_back("relation preservation was sampled, not exhausted");
    return o;
}

Outcome cmd_verify(const Model& m, const std::vector<std::string>& args, const RunOptions& opt) {
    need_args(args, 0, 0, "verify");
    Outcome o;
    json results = json::array();
    bool all = true;
    for (const auto& c : m.checks) {
        std::vector<std::string> rest(c.run.begin() + 1, c.run.end());
        Report r = run_command(&m, c.run[0], rest, opt);
        bool ok = r.verdict == c.expect;
        all = all && ok;
        results.push_back({{"check", c.name}, {"run", c.run}, {"expect", c.expect}, {"got", r.verdict}, {"ok", ok}});
    }
    o.holds = all;
    o.verdict = all ? "pass" : "fail";
    o.certificate = {{"checks", results}};
    return o;
}

}  // namespace

std::string instance_hash(const TccInstance& inst) {
    std::uint64_t h = hash_seed;
    hash_mix(h, hash_of(inst.T()));
    hash_mix(h, hash_of(inst.C()));
    hash_mix(h, hash_of(inst.B()));
    hash_mix(h, hash_of(inst.eval()));
    for (auto [i, j] : inst.brel().edges()) {
        hash_mix(h, i);
        hash_mix(h, j);
    }
    return hex(h);
}

Report run_command(const Model* model, const std::string& command, const std::vector<std::string>& args,
                   const RunOptions& opt) {
    Outcome o;
    bool over = false;
    std::string over_msg;
    try {
        if (command == "laws") o = cmd_laws(model, args, opt);
        else if (command == "cantor") o = cmd_cantor(args, opt);
        else if (command == "universal") o = cmd_universal(need_model(model, command), args, opt);
        else if (command == "reduce") o = cmd_reduce(need_model(model, command), args, opt);
        else if (command == "nogo") o = cmd_nogo(need_model(model, command), args, opt);
        else if (command == "parsimony") o = cmd_parsimony(need_model(model, command), args, opt);
        else if (command == "lawvere") o = cmd_lawvere(need_model(model, command), args, opt);
        else if (command == "unreachability") o = cmd_unreachability(need_model(model, command), args, opt);
        else if (command == "functor-check") o = cmd_functor_check(need_model(model, command), args, opt);
        else if (command == "verify") o = cmd_verify(need_model(model, command), args, opt);
        else fail(Errc::unknown_command, "unknown command '" + command + "'");
    } catch (const Error& e) {
        if (e.code() != Errc::budget_exceeded) throw;
        over = true;
        over_msg = e.what();
        o = Outcome{};
        o.verdict = "budget-exceeded";
        o.exhaustive = false;
        o.notes.push_back(over_msg);
    }

    Report r;
    r.verdict = o.verdict;
    r.holds = o.holds;
    r.budget_exceeded = over;
    json& b = r.body;
    b["schema"] = report_schema_id;
    b["command"] = command;
    b["args"] = args;
    if (o.instance && model) {
        b["instance"] = {{"name", *o.instance}, {"hash", instance_hash(model->instance(*o.instance))}};
    } else {
        b["instance"] = nullptr;
    }
    b["verdict"] = o.verdict;
    b["holds"] = o.holds;
    b["certificate"] = o.certificate;
    b["certificate_verified"] = o.verified ? json(*o.verified) : json(nullptr);
    json budget = {{"max_candidates", opt.search.max_candidates},
                   {"search", space_name(opt.search.space)},
                   {"used", o.used},
                   {"exhaustive", o.exhaustive},
                   {"exceeded", over}};
    if (o.certificate.is_null())
        budget["disclaimer"] = over ? "budget exceeded before a verdict: " + over_msg
                                    : (o.exhaustive ? "verdict from exhaustive search within budget; no witness object"
                                                    : "search was not exhaustive; the verdict is not a proof");
    b["budget"] = budget;
    b["seed"] = opt.seed;
    b["notes"] = o.notes;
    b["details"] = o.details;
    return r;
}

std::string render(const Report& r, Format f) {
    if (f == Format::json) return r.body.dump(2) + "\n";
    const json& b = r.body;
    std::ostringstream os;
    os << "command: " << b["command"].get<std::string>();
    for (const auto& a : b["args"]) os << " " << a.get<std::string>();
    os << "\n";
    if (!b["instance"].is_null())
        os << "instance: " << b["instance"]["name"].get<std::string>() << " (" << b["instance"]["hash"].get<std::string>()
           << ")\n";
    os << "verdict: " << r.verdict << "\n";
    os << "holds: " << (r.holds ? "true" : "false") << "\n";
    os << "certificate: " << b["certificate"].dump() << "\n";
    os << "certificate_verified: " << b["certificate_verified"].dump() << "\n";
    const json& bu = b["budget"];
    os << "budget: max_candidates=" << bu["max_candidates"].dump() << " search=" << bu["search"].get<std::string>()
       << " used=" << bu["used"].dump() << " exhaustive=" << bu["exhaustive"].dump()
       << " exceeded=" << bu["exceeded"].dump() << "\n";
    if (bu.contains("disclaimer")) os << "disclaimer: " << bu["disclaimer"].get<std::string>() << "\n";
    for (const auto& n : b["notes"]) os << "note: " << n.get<std::string>() << "\n";
    if (!b["details"].empty()) os << "details: " << b["details"].dump() << "\n";
    return os.str();
}

json export_model(const Model& m) {
    json out;
    out["schema"] = "univsim-model/1";
    json sets = json::object();
    for (const auto& [n, s] : m.sets) sets[n] = set_json(s);
    out["sets"] = sets;
    json rels = json::object();
    for (const auto& [n, f] : m.rels) rels[n] = rel_json(f);
    out["relations"] = rels;
    json orders = json::object();
    for (const auto& [n, p] : m.orders) orders[n] = order_json(p);
    out["preorders"] = orders;
    json tccs = json::array();
    for (const auto& n : m.tcc_order) {
        const TccInstance& i = m.instance(n);
        tccs.push_back({{"name", n},
                        {"hash", instance_hash(i)},
                        {"targets", set_json(i.T())},
                        {"contexts", set_json(i.C())},
                        {"behaviors", set_json(i.B())},
                        {"eval", rel_json(i.eval())},
                        {"order", order_json(i.brel())}});
    }
    out["instances"] = tccs;
    json sims = json::object();
    for (const auto& [n, s] : m.sims) {
        json j = sim_json(s.sim);
        j["instance"] = s.instance;
        sims[n] = j;
    }
    out["simulators"] = sims;
    json procs = json::object();
    for (const auto& [n, p] : m.procs) {
        json j = processing_json(p.proc);
        j["instance"] = p.instance;
        procs[n] = j;
    }
    out["processings"] = procs;
    json fs = json::object();
    for (const auto& [n, F] : m.functors) {
        json maps = json::array();
        for (const auto& a : F.atoms()) {
            json img = json::array();
            for (std::size_t i = 0; i < a.image.size(); ++i) img.push_back({a.from.label(i), a.to.label(a.image[i])});
            maps.push_back({{"from", a.from.id()}, {"to", a.to.id()}, {"pairs", img}});
        }
        fs[n] = {{"maps", maps}};
    }
    out["functors"] = fs;
    json phis = json::object();
    for (const auto& [n, p] : m.phis) {
        json pts = json::object();
        const FinSet& T = m.instance(p.instance).T();
        for (std::size_t t = 0; t < T.size(); ++t) pts[T.label(t)] = q(p.phi.point[t]);
        phis[n] = {{"instance", p.instance}, {"values", pts}, {"empty", q(p.phi.empty)}};
    }
    out["phis"] = phis;
    json checks = json::array();
    for (const auto& c : m.checks) checks.push_back({{"name", c.name}, {"run", c.run}, {"expect", c.expect}});
    out["checks"] = checks;
    return out;
}

}  // namespace univsim
