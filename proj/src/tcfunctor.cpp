#include "tcfunctor.hpp"

#include "error.hpp"

#include <random>
#include <set>

namespace univsim {

namespace {

bool same_instance(const TccInstance& a, const TccInstance& b) {
    return a.T() == b.T() && a.C() == b.C() && a.B() == b.B() && a.eval() == b.eval() && a.brel() == b.brel();
}

std::string bits_key(const Bits& b) {
    std::string s;
    boost::to_string(b, s);
    return s;
}

}  // namespace

TcFunctor::TcFunctor(std::string name, std::vector<AtomMap> atoms, TccInstance source, TccInstance target)
    : name_(std::move(name)), atoms_(std::move(atoms)), src_(std::move(source)), dst_(std::move(target)) {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        const AtomMap& m = atoms_[i];
        if (m.from.is_unit() || m.from.is_product() || m.to.is_unit() || m.to.is_product())
            fail(Errc::invalid_argument, "functor " + name_ + ": object maps are given on atomic sets");
        if (m.image.size() != m.from.size())
            fail(Errc::invalid_argument, "functor " + name_ + ": map of " + m.from.id() + " has wrong length");
        for (std::size_t j = 0; j < i; ++j)
            if (atoms_[j].from == m.from) fail(Errc::invalid_argument, "functor " + name_ + ": " + m.from.id() + " mapped twice");
    }
}

const AtomMap* TcFunctor::find(const FinSet& atom) const {
    for (const auto& m : atoms_)
        if (m.from == atom) return &m;
    return nullptr;
}

FinSet TcFunctor::map(const FinSet& a) const {
    if (a.is_unit()) return a;
    std::vector<FinSet> out;
    for (const auto& f : a.factors()) {
        const AtomMap* m = find(f);
        out.push_back(m ? m->to : f);
    }
    return FinSet::product(out);
}

std::size_t TcFunctor::map_element(const FinSet& a, std::size_t i) const {
    if (a.is_unit()) return 0;
    std::vector<FinSet> fs = a.factors();
    std::vector<std::size_t> parts = fs.size() == 1 ? std::vector<std::size_t>{i} : a.split(i);
    for (std::size_t k = 0; k < fs.size(); ++k)
        if (const AtomMap* m = find(fs[k])) {
            if (parts[k] >= m->image.size() || m->image[parts[k]] >= m->to.size())
                fail(Errc::invalid_argument, "functor " + name_ + ": image out of range");
            parts[k] = m->image[parts[k]];
        }
    if (fs.size() == 1) return parts[0];
    return map(a).join(parts);
}

FinRel TcFunctor::map(const FinRel& f) const {
    FinRel out(map(f.dom()), map(f.cod()));
    for (auto [a, x] : f.pairs()) out.set(map_element(f.dom(), a), map_element(f.cod(), x));
    return out;
}

TcFunctor identity_functor(const TccInstance& inst) { return TcFunctor("id", {}, inst, inst); }

TcFunctor compose_functors(const TcFunctor& g, const TcFunctor& f) {
    if (!same_instance(f.target(), g.source()))
        fail(Errc::type_mismatch, "cannot compose " + g.name() + " after " + f.name() + ": instances differ");
    std::vector<AtomMap> atoms;
    for (const auto& m : f.atoms()) {
        AtomMap c{m.from, g.map(m.to), {}};
        for (auto x : m.image) c.image.push_back(g.map_element(m.to, x));
        atoms.push_back(std::move(c));
    }
    for (const auto& m : g.atoms()) {
        bool shadowed = false;
        for (const auto& fm : f.atoms()) shadowed = shadowed || fm.from == m.from;
        if (!shadowed) atoms.push_back(m);
    }
    return TcFunctor(g.name() + "." + f.name(), std::move(atoms), f.source(), g.target());
}

namespace {

FinRel random_rel(const FinSet& a, const FinSet& b, std::mt19937_64& rng) {
    FinRel f(a, b);
    std::bernoulli_distribution coin(0.35);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            if (coin(rng)) f.set(i, j);
    return f;
}

}  // namespace

FunctorCheck check_tc_functor(const TcFunctor& F, const SearchOptions& opt, std::uint64_t seed, std::size_t samples) {
    FunctorCheck res;
    const TccInstance& src = F.source();
    const TccInstance& dst = F.target();
    auto violation = [&](const std::string& v) {
        if (res.violations.size() < 32) res.violations.push_back(v);
    };

    res.objects_ok = F.map(src.T()) == dst.T() && F.map(src.C()) == dst.C();
    if (!res.objects_ok) violation("F(T) or F(C) differs from the target instance");

    res.bijections_ok = true;
    for (const auto& m : F.atoms()) {
        std::vector<bool> hit(m.to.size());
        bool ok = m.from.size() == m.to.size();
        for (auto x : m.image) {
            if (!ok || x >= m.to.size() || hit[x]) {
                ok = false;
                break;
            }
            hit[x] = true;
        }
        if (!ok) {
            res.bijections_ok = false;
            violation("object map " + m.from.id() + " -> " + m.to.id() + " is not a bijection");
        }
    }
    if (!res.bijections_ok) return res;

    // generating objects: mapped atoms plus the factors of T and C
    std::vector<FinSet> gens;
    auto add = [&](const FinSet& s) {
        for (const auto& f : s.factors()) {
            bool dup = false;
            for (const auto& g : gens) dup = dup || g == f;
            if (!dup && f.size() <= 8) gens.push_back(f);
        }
    };
    for (const auto& m : F.atoms()) add(m.from);
    add(src.T());
    add(src.C());
    gens.push_back(FinSet::unit());

    std::mt19937_64 rng(seed ^ 0x5eedf00dULL);
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    auto obj = [&]() {
        FinSet a = gens[pick(rng)];
        if (a.size() <= 3 && std::bernoulli_distribution(0.3)(rng)) a = FinSet::product(a, gens[pick(rng)]);
        return a;
    };
    res.functorial = res.gs_monoidal = true;
    for (std::size_t k = 0; k < samples; ++k) {
        ++res.samples;
        FinSet X = obj(), Y = obj(), Z = obj();
        FinRel f = random_rel(X, Y, rng), g = random_rel(Y, Z, rng), h = random_rel(Z, X, rng);
        if (!(F.map(identity(X)) == identity(F.map(X)))) {
            res.functorial = false;
            violation("identity on " + X.id() + " not preserved");
        }
        if (!(F.map(compose(g, f)) == compose(F.map(g), F.map(f)))) {
            res.functorial = false;
            violation("composition " + X.id() + " -> " + Y.id() + " -> " + Z.id() + " not preserved");
        }
        if (!(F.map(tensor(f, h)) == tensor(F.map(f), F.map(h)))) {
            res.functorial = false;
            violation("tensor of " + f.dom().id() + " and " + h.dom().id() + " not preserved");
        }
        if (!(F.map(copy(X)) == copy(F.map(X))) || !(F.map(del(X)) == del(F.map(X))) ||
            !(F.map(swap(X, Y)) == swap(F.map(X), F.map(Y)))) {
            res.gs_monoidal = false;
            violation("copy, delete or swap on " + X.id() + " not preserved");
        }
    }

    if (!res.objects_ok) return res;
    // imitation is row-wise and F relabels rows, so states I -> T*C decide every A
    const FinSet& TC = src.TC();
    const std::size_t n = TC.size();
    std::vector<std::size_t> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = F.map_element(TC, i);
    std::set<std::pair<std::string, std::string>> seen;
    std::vector<std::pair<Bits, Bits>> classes;
    auto visit = [&](const Bits& u) {
        Bits b(src.B().size()), b2(dst.B().size());
        for (auto i = u.find_first(); i != Bits::npos; i = u.find_next(i)) {
            b |= src.eval().row(i);
            b2 |= dst.eval().row(img[i]);
        }
        if (seen.emplace(bits_key(b), bits_key(b2)).second) classes.emplace_back(b, b2);
    };
    res.relation_exhaustive = n < 40 && (std::uint64_t{1} << n) <= opt.max_candidates;
    if (res.relation_exhaustive) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            Bits u(n);
            for (std::size_t i = 0; i < n; ++i)
                if (m >> i & 1) u.set(i);
            visit(u);
        }
    } else {
        std::bernoulli_distribution coin(0.5);
        for (std::size_t k = 0; k < samples * 16; ++k) {
            Bits u(n);
            for (std::size_t i = 0; i < n; ++i)
                if (coin(rng)) u.set(i);
            visit(u);
        }
        for (std::size_t i = 0; i < n; ++i) {
            Bits u(n);
            u.set(i);
            visit(u);
        }
        visit(Bits(n));
    }
    res.relation_preserved = true;
    for (const auto& [x, x2] : classes)
        for (const auto& [y, y2] : classes) {
            ++res.relation_pairs;
            if (imitates_row(x, y, src.brel()) && !imitates_row(x2, y2, dst.brel())) {
                res.relation_preserved = false;
                violation("imitation between behaviors " + bits_key(x) + " and " + bits_key(y) + " not preserved");
            }
        }
    return res;
}

Simulator map_through(const TcFunctor& F, const Simulator& s) {
    try {
        return make_simulator(F.map(s.sT()), F.map(s.sC()), F.target());
    } catch (const Error& e) {
        fail(Errc::invalid_argument, "functor " + F.name() + " invalid: image of simulator rejected (" + e.what() + ")");
    }
}

SimMorphism map_through(const TcFunctor& F, const SimMorphism& m) {
    const TccInstance& dst = F.target();
    try {
        Processing q = make_processing(F.map(m.q.qT), F.map(m.q.qC), dst);
        SimMorphism out = make_morphism(F.map(m.r), q, map_through(F, m.source), dst);
        if (!(out.target == map_through(F, m.target))) fail(Errc::invalid_argument, "image morphism has the wrong target");
        return out;
    } catch (const Error& e) {
        fail(Errc::invalid_argument, "functor " + F.name() + " invalid: image of morphism rejected (" + e.what() + ")");
    }
}

PreservationResult verify_universality_preservation(const TcFunctor& F, const Simulator& s, const SearchOptions& opt) {
    PreservationResult res;
    const TccInstance& src = F.source();
    const TccInstance& dst = F.target();
    res.witness = find_universality_witness(s, src, opt).witness;
    res.source_universal = res.witness.has_value();
    Simulator fs = map_through(F, s);
    if (res.witness) {
        res.image_witness = F.map(*res.witness);
        res.witness_transported = check_reduction(*res.image_witness, Flavor::lax, fs, trivial_simulator(dst), dst);
    }
    res.image_universal = find_universality_witness(fs, dst, opt).witness.has_value();
    if (is_singleton(s) && !is_singleton(fs)) res.singleton_preserved = false;
    return res;
}

}  // namespace univsim
