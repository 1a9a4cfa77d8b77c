#include "instances.hpp"

#include "error.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace univsim {

namespace {

std::uint64_t ipow(std::uint64_t b, std::size_t e) { return sat_pow(b, e); }

// all assignments of `n` vertices with q levels, first vertex slowest
template <class F>
void for_each_sigma(std::size_t n, int q, F&& f) {
    for (Odometer od(std::vector<std::size_t>(n, static_cast<std::size_t>(q))); !od.done(); od.next()) {
        Sigma s(n);
        for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<int>(od.digits()[i]);
        f(s);
    }
}

}  // namespace

void SimplicialComplex::validate() const {
    const std::size_t nv = vertices.size();
    for (const auto& e : facets) {
        if (!std::is_sorted(e.begin(), e.end()) || std::adjacent_find(e.begin(), e.end()) != e.end())
            fail(Errc::invalid_argument, "facet vertices must be distinct");
        for (auto v : e)
            if (v >= nv) fail(Errc::unknown_element, "facet vertex out of range");
    }
    if (!std::is_sorted(facets.begin(), facets.end())) fail(Errc::invalid_argument, "facets must be in canonical order");
    for (std::size_t i = 0; i < facets.size(); ++i)
        for (std::size_t j = 0; j < facets.size(); ++j) {
            if (i == j) continue;
            if (std::includes(facets[j].begin(), facets[j].end(), facets[i].begin(), facets[i].end()))
                fail(Errc::invalid_argument, "facets must form an antichain");
        }
}

SimplicialComplex make_complex(std::vector<std::string> vertices, std::vector<std::vector<std::string>> facets) {
    SimplicialComplex g{FinSet::make("V", std::move(vertices)), {}};
    for (const auto& f : facets) {
        std::vector<std::size_t> e;
        for (const auto& v : f) e.push_back(g.vertices.index(v));
        std::sort(e.begin(), e.end());
        g.facets.push_back(std::move(e));
    }
    std::sort(g.facets.begin(), g.facets.end());
    g.validate();
    return g;
}

void SpinSystem::validate() const {
    complex.validate();
    if (q < 1) fail(Errc::invalid_argument, "spin system " + name + " needs at least one level");
    if (local.size() != complex.facets.size())
        fail(Errc::invalid_argument, "spin system " + name + " needs one local table per facet");
    for (std::size_t k = 0; k < local.size(); ++k)
        if (local[k].size() != ipow(static_cast<std::uint64_t>(q), complex.facets[k].size()))
            fail(Errc::invalid_argument, "spin system " + name + ": local table " + std::to_string(k) + " has " +
                                             std::to_string(local[k].size()) + " entries");
}

Rational energy(const SpinSystem& h, const Sigma& sigma) {
    if (sigma.size() != h.complex.vertices.size()) fail(Errc::type_mismatch, "configuration does not match complex");
    Rational e(0);
    for (std::size_t k = 0; k < h.complex.facets.size(); ++k) {
        std::size_t idx = 0;
        for (auto v : h.complex.facets[k]) {
            if (sigma[v] < 0 || sigma[v] >= h.q) fail(Errc::type_mismatch, "spin value out of range");
            idx = idx * static_cast<std::size_t>(h.q) + static_cast<std::size_t>(sigma[v]);
        }
        e += h.local[k][idx];
    }
    return e;
}

std::vector<Rational> spectrum(const SpinSystem& h, std::uint64_t budget) {
    std::uint64_t n = ipow(static_cast<std::uint64_t>(h.q), h.complex.vertices.size());
    if (n > budget) fail(Errc::budget_exceeded, "spectrum of " + h.name + " needs " + std::to_string(n) + " configurations");
    std::set<Rational> s;
    for_each_sigma(h.complex.vertices.size(), h.q, [&](const Sigma& sg) { s.insert(energy(h, sg)); });
    return {s.begin(), s.end()};
}

std::vector<Rational> reduced(const std::vector<Rational>& levels, const Rational& delta) {
    std::vector<Rational> out;
    for (const auto& e : levels)
        if (e <= delta) out.push_back(e);
    return out;
}

Rational size_measure(const SimplicialComplex& g, int q) {
    Rational s(0);
    for (const auto& e : g.facets) s += Rational(static_cast<long long>(ipow(static_cast<std::uint64_t>(q), e.size())));
    return s;
}

std::string behavior_label(const SpinBehavior& b) {
    std::string s = "e=" + to_string(b.e) + "|S={";
    for (std::size_t i = 0; i < b.S.size(); ++i) s += (i ? "," : "") + to_string(b.S[i]);
    return s + "}|D=" + to_string(b.delta);
}

std::string sigma_digits(const Sigma& s) {
    std::string out;
    bool wide = std::any_of(s.begin(), s.end(), [](int v) { return v > 9; });
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (wide && i) out += ".";
        out += std::to_string(s[i]);
    }
    return out;
}

std::optional<SpinBehavior> spin_eval(const SpinSystem& h, const SimplicialComplex& g, int q, const Sigma& sigma) {
    if (!(h.complex == g) || h.q != q) return std::nullopt;
    Rational e = energy(h, sigma);
    if (e > h.delta) return std::nullopt;
    return SpinBehavior{e, spectrum(h), h.delta};
}

bool spin_brel(const SpinBehavior& b1, const SpinBehavior& b2) {
    return reduced(b1.S, b2.delta) == reduced(b2.S, b2.delta) && b1.delta >= b2.delta && b1.e == b2.e &&
           b2.e <= b2.delta;
}

SpinSystem field_system(int n) {
    if (n < 0) fail(Errc::invalid_argument, "field system size must be nonnegative");
    std::vector<std::string> v;
    std::vector<std::vector<std::string>> f;
    for (int i = 0; i < n; ++i) {
        v.push_back("v" + std::to_string(i));
        f.push_back({v.back()});
    }
    SpinSystem h{"field" + std::to_string(n), make_complex(v, f), 2, {}, Rational(n)};
    h.local.assign(static_cast<std::size_t>(n), {Rational(0), Rational(1)});
    h.validate();
    return h;
}

SpinSystem ising_system(std::string name, std::vector<std::string> vertices,
                        const std::vector<std::pair<std::size_t, std::size_t>>& edges, const std::vector<Rational>& J,
                        const std::vector<Rational>& fields, Rational delta) {
    if (J.size() != edges.size() || fields.size() != vertices.size())
        fail(Errc::invalid_argument, "ising system needs one coupling per edge and one field per vertex");
    std::vector<std::vector<std::string>> f;
    std::vector<std::pair<std::vector<std::size_t>, std::vector<Rational>>> terms;
    for (std::size_t k = 0; k < edges.size(); ++k) {
        auto [i, j] = edges[k];
        if (i > j) std::swap(i, j);
        std::vector<Rational> tab;
        for (int si = 0; si < 2; ++si)
            for (int sj = 0; sj < 2; ++sj) {
                Rational a(si ? -1 : 1), b(sj ? -1 : 1);
                tab.push_back(J[k] * a * b + fields[i] * a + fields[j] * b);
            }
        terms.push_back({{i, j}, tab});
    }
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SpinSystem h;
    h.name = std::move(name);
    h.complex.vertices = FinSet::make("V", std::move(vertices));
    for (auto& t : terms) {
        h.complex.facets.push_back(t.first);
        h.local.push_back(t.second);
    }
    h.q = 2;
    h.delta = delta;
    h.validate();
    return h;
}

SpinSystem permute_system(const SpinSystem& h, const std::vector<std::size_t>& pi, std::string name) {
    const std::size_t nv = h.complex.vertices.size();
    if (pi.size() != nv) fail(Errc::invalid_argument, "permutation size mismatch");
    std::vector<bool> seen(nv);
    for (auto v : pi) {
        if (v >= nv || seen[v]) fail(Errc::invalid_argument, "vertex map is not a bijection");
        seen[v] = true;
    }
    std::vector<std::pair<std::vector<std::size_t>, std::vector<Rational>>> terms;
    const std::size_t q = static_cast<std::size_t>(h.q);
    for (std::size_t k = 0; k < h.complex.facets.size(); ++k) {
        const auto& e = h.complex.facets[k];
        std::vector<std::size_t> img;
        for (auto v : e) img.push_back(pi[v]);
        std::sort(img.begin(), img.end());
        std::vector<Rational> tab(h.local[k].size());
        for (Odometer od(std::vector<std::size_t>(img.size(), q)); !od.done(); od.next()) {
            // tau assigns od.digits()[j] to vertex img[j]; evaluate H_e at tau o pi
            std::size_t src = 0, dst = 0;
            for (auto v : e) {
                std::size_t pos = static_cast<std::size_t>(std::find(img.begin(), img.end(), pi[v]) - img.begin());
                src = src * q + od.digits()[pos];
            }
            for (auto d : od.digits()) dst = dst * q + d;
            tab[dst] = h.local[k][src];
        }
        terms.push_back({img, tab});
    }
    std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    SpinSystem out{std::move(name), {h.complex.vertices, {}}, h.q, {}, h.delta};
    for (auto& t : terms) {
        out.complex.facets.push_back(t.first);
        out.local.push_back(t.second);
    }
    out.validate();
    return out;
}

SpinTcc build_spin_tcc(const std::string& name, const std::vector<SpinSystem>& systems, std::uint64_t budget) {
    SpinTcc st;
    st.systems = systems;
    std::vector<std::string> tnames;
    for (const auto& h : systems) {
        h.validate();
        tnames.push_back(h.name);
        std::size_t k = 0;
        for (; k < st.complexes.size(); ++k)
            if (st.complexes[k].first == h.complex && st.complexes[k].second == h.q) break;
        if (k == st.complexes.size()) st.complexes.emplace_back(h.complex, h.q);
        st.system_complex.push_back(k);
    }
    FinSet T = FinSet::make(name + ".T", tnames);

    std::uint64_t total = 0;
    for (const auto& [g, q] : st.complexes) total += ipow(static_cast<std::uint64_t>(q), g.vertices.size());
    if (total > budget) fail(Errc::budget_exceeded, "spin instance needs " + std::to_string(total) + " configurations");
    std::vector<std::string> clabels;
    for (std::size_t k = 0; k < st.complexes.size(); ++k)
        for_each_sigma(st.complexes[k].first.vertices.size(), st.complexes[k].second, [&](const Sigma& s) {
            st.configs.push_back({k, s});
            clabels.push_back("k" + std::to_string(k) + "_" + sigma_digits(s));
        });
    FinSet C = FinSet::make(name + ".C", clabels);

    std::vector<std::vector<Rational>> spectra;
    for (const auto& h : systems) spectra.push_back(spectrum(h, budget));
    std::map<std::string, std::size_t> bindex;
    std::vector<std::string> blabels;
    std::vector<long> ev(T.size() * C.size(), -1);
    for (std::size_t t = 0; t < T.size(); ++t)
        for (std::size_t c = 0; c < C.size(); ++c) {
            const auto& cf = st.configs[c];
            if (cf.complex != st.system_complex[t]) continue;
            Rational e = energy(systems[t], cf.sigma);
            if (e > systems[t].delta) continue;
            SpinBehavior b{e, spectra[t], systems[t].delta};
            std::string l = behavior_label(b);
            auto [it, fresh] = bindex.emplace(l, blabels.size());
            if (fresh) {
                blabels.push_back(l);
                st.behaviors.push_back(b);
            }
            ev[t * C.size() + c] = static_cast<long>(it->second);
        }
    FinSet B = FinSet::make(name + ".B", blabels);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = 0; j < B.size(); ++j)
            if (i != j && spin_brel(st.behaviors[i], st.behaviors[j])) edges.emplace_back(i, j);
    Preorder brel = Preorder::closure(B, edges);
    ensure(brel.edges() == edges, "spin behavioral relation is transitive");
    for (std::size_t i = 0; i < B.size(); ++i) ensure(spin_brel(st.behaviors[i], st.behaviors[i]), "spin brel reflexive");
    st.inst = TccInstance::make(name, T, C, B, FinRel::from_function(FinSet::product(T, C), B, ev), brel);
    return st;
}

MonotoneFn reduced_spectrum_size(const SpinTcc& st) {
    MonotoneFn phi;
    for (const auto& h : st.systems)
        phi.point.push_back(Rational(static_cast<long long>(reduced(spectrum(h), h.delta).size())));
    phi.empty = Rational(0);
    return phi;
}

Processing spin_permutation_processing(const SpinTcc& st, const std::vector<std::vector<std::size_t>>& pi,
                                       const FinSet& P) {
    const TccInstance& inst = st.inst;
    if (pi.size() != st.complexes.size()) fail(Errc::invalid_argument, "need one vertex permutation per complex");
    // complex images
    std::vector<std::size_t> kmap(st.complexes.size());
    std::vector<bool> hit(st.complexes.size());
    for (std::size_t k = 0; k < st.complexes.size(); ++k) {
        const auto& [g, q] = st.complexes[k];
        SpinSystem probe{"probe", g, q, {}, Rational(0)};
        for (const auto& e : g.facets) probe.local.emplace_back(ipow(static_cast<std::uint64_t>(q), e.size()), Rational(0));
        SpinSystem img = permute_system(probe, pi[k], "probe");
        std::size_t k2 = 0;
        for (; k2 < st.complexes.size(); ++k2)
            if (st.complexes[k2].first == img.complex && st.complexes[k2].second == q) break;
        if (k2 == st.complexes.size()) fail(Errc::invalid_argument, "permuted complex is not part of the instance");
        if (hit[k2]) fail(Errc::invalid_argument, "permutation identifies two complexes");
        hit[k2] = true;
        kmap[k] = k2;
    }
    std::vector<long> tmap(inst.T().size());
    for (std::size_t t = 0; t < inst.T().size(); ++t) {
        SpinSystem img = permute_system(st.systems[t], pi[st.system_complex[t]], st.systems[t].name);
        long found = -1;
        for (std::size_t t2 = 0; t2 < st.systems.size() && found < 0; ++t2) {
            const SpinSystem& o = st.systems[t2];
            if (o.complex == img.complex && o.q == img.q && o.local == img.local && o.delta == img.delta)
                found = static_cast<long>(t2);
        }
        if (found < 0) fail(Errc::invalid_argument, "permuted system of " + st.systems[t].name + " is not a target");
        tmap[t] = found;
    }
    std::vector<long> cmap(inst.C().size());
    for (std::size_t c = 0; c < inst.C().size(); ++c) {
        const auto& cf = st.configs[c];
        const auto& perm = pi[cf.complex];
        Sigma moved(cf.sigma.size());
        for (std::size_t v = 0; v < cf.sigma.size(); ++v) moved[perm[v]] = cf.sigma[v];
        long found = -1;
        for (std::size_t c2 = 0; c2 < st.configs.size() && found < 0; ++c2)
            if (st.configs[c2].complex == kmap[cf.complex] && st.configs[c2].sigma == moved) found = static_cast<long>(c2);
        ensure(found >= 0, "permuted configuration exists");
        cmap[c] = found;
    }
    FinRel kT = FinRel::from_function(inst.T(), inst.T(), tmap);
    FinRel kC = tensor(del(inst.T()), FinRel::from_function(inst.C(), inst.C(), cmap));
    return constant_processing(P, kT, kC, inst);
}

EnergyMatching energy_matching(const SpinTcc& st, const Simulator& s, const FinRel& r) {
    EnergyMatching res;
    const std::size_t nc = st.inst.C().size();
    for (std::size_t t = 0; t < st.inst.T().size(); ++t) {
        long p = r.image(t);
        long t2 = p < 0 ? -1 : s.compile(static_cast<std::size_t>(p));
        if (t2 < 0) {
            res.spectra_agree = res.energies_match = false;
            continue;
        }
        const SpinSystem& h = st.systems[t];
        const SpinSystem& h2 = st.systems[static_cast<std::size_t>(t2)];
        if (reduced(spectrum(h), h.delta) != reduced(spectrum(h2), h.delta)) res.spectra_agree = false;
        for (std::size_t c = 0; c < nc; ++c) {
            if (st.configs[c].complex != st.system_complex[t]) continue;
            Rational e = energy(h, st.configs[c].sigma);
            const Bits& img = s.sC().row(static_cast<std::size_t>(p) * nc + c);
            if (img.none()) res.energies_match = false;
            for (auto c2 = img.find_first(); c2 != Bits::npos; c2 = img.find_next(c2)) {
                if (st.configs[c2].complex != st.system_complex[static_cast<std::size_t>(t2)]) {
                    res.energies_match = false;
                    continue;
                }
                Rational e2 = energy(h2, st.configs[c2].sigma);
                if (!(e == e2 || (e > h.delta && e2 > h.delta))) res.energies_match = false;
            }
        }
    }
    return res;
}

// ---------------------------------------------------------------------------

bool is_cofinal(const Preorder& x, const Bits& m) {
    for (std::size_t i = 0; i < x.carrier().size(); ++i)
        if (!x.above(i).intersects(m)) return false;
    return true;
}

CatalogInstance cofinal_instance(const std::string& name, const Preorder& x, const Bits& m) {
    const FinSet& X = x.carrier();
    if (m.size() != X.size()) fail(Errc::type_mismatch, "subset width mismatch");
    TccInstance inst = TccInstance::make(name, X, FinSet::unit(), X, identity(X), x);
    std::vector<std::string> labels;
    std::vector<long> incl;
    for (auto i = m.find_first(); i != Bits::npos; i = m.find_next(i)) {
        labels.push_back(X.label(i));
        incl.push_back(static_cast<long>(i));
    }
    FinSet M = FinSet::make(name + ".M", labels);
    Simulator s = make_simulator(FinRel::from_function(M, X, incl), del(M), inst);
    return {inst, s, "inclusion of a subset into a finite preorder; contexts trivial"};
}

void FiniteMetric::validate() const {
    const std::size_t n = points.size();
    if (d.size() != n) fail(Errc::invalid_argument, "distance matrix size mismatch");
    for (std::size_t i = 0; i < n; ++i) {
        if (d[i].size() != n) fail(Errc::invalid_argument, "distance matrix size mismatch");
        if (d[i][i] != 0) fail(Errc::invalid_argument, "distance to self must be 0");
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i][j] < 0 || d[i][j] != d[j][i]) fail(Errc::invalid_argument, "distances must be symmetric and nonnegative");
            if (i != j && d[i][j] == 0) fail(Errc::invalid_argument, "distinct points at distance 0");
            for (std::size_t k = 0; k < n; ++k)
                if (d[i][k] > d[i][j] + d[j][k]) fail(Errc::invalid_argument, "triangle inequality fails");
        }
    }
}

namespace {

Bits ball(const FiniteMetric& m, std::size_t x, const Rational& r) {
    Bits b(m.points.size());
    for (std::size_t y = 0; y < m.points.size(); ++y)
        if (m.d[x][y] < r) b.set(y);
    return b;
}

std::string ball_label(const FiniteMetric& m, const Bits& b) {
    std::string s = "{";
    bool first = true;
    for (auto y = b.find_first(); y != Bits::npos; y = b.find_next(y)) {
        s += (first ? "" : ",") + m.points.label(y);
        first = false;
    }
    return s + "}";
}

}  // namespace

CatalogInstance dense_metric_instance(const std::string& name, const FiniteMetric& m, const Bits& q,
                                      const std::vector<Rational>& radii) {
    m.validate();
    for (const auto& r : radii)
        if (r <= 0) fail(Errc::invalid_argument, "radii must be positive");
    const std::size_t n = m.points.size();
    std::vector<std::string> tl;
    std::vector<Bits> balls;
    for (std::size_t x = 0; x < n; ++x)
        for (const auto& r : radii) {
            tl.push_back(m.points.label(x) + "@" + to_string(r));
            balls.push_back(ball(m, x, r));
        }
    FinSet T = FinSet::make(name + ".T", tl);
    std::map<std::string, std::size_t> bi;
    std::vector<std::string> bl;
    std::vector<Bits> distinct;
    std::vector<long> ev;
    for (const auto& b : balls) {
        auto [it, fresh] = bi.emplace(ball_label(m, b), bl.size());
        if (fresh) {
            bl.push_back(it->first);
            distinct.push_back(b);
        }
        ev.push_back(static_cast<long>(it->second));
    }
    FinSet B = FinSet::make(name + ".B", bl);
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < distinct.size(); ++i)
        for (std::size_t j = 0; j < distinct.size(); ++j)
            if (i != j && distinct[i].is_subset_of(distinct[j])) edges.emplace_back(i, j);
    TccInstance inst =
        TccInstance::make(name, T, FinSet::unit(), B, FinRel::from_function(T, B, ev), Preorder::closure(B, edges));
    std::vector<std::string> pl;
    std::vector<long> incl;
    for (std::size_t x = 0; x < n; ++x) {
        if (!q.test(x)) continue;
        for (std::size_t k = 0; k < radii.size(); ++k) {
            pl.push_back(tl[x * radii.size() + k]);
            incl.push_back(static_cast<long>(x * radii.size() + k));
        }
    }
    FinSet P = FinSet::make(name + ".P", pl);
    Simulator s = make_simulator(FinRel::from_function(P, T, incl), del(P), inst);
    return {inst, s, "finite metric analogue: open balls ordered by inclusion, programs are subset points with radii"};
}

bool is_dense_direct(const FiniteMetric& m, const Bits& q, const std::vector<Rational>& radii) {
    for (std::size_t x = 0; x < m.points.size(); ++x)
        for (const auto& r : radii) {
            Bits target = ball(m, x, r);
            bool ok = false;
            for (auto y = q.find_first(); y != Bits::npos && !ok; y = q.find_next(y))
                for (const auto& r2 : radii)
                    if (ball(m, y, r2).is_subset_of(target)) ok = true;
            if (!ok) return false;
        }
    return true;
}

TccInstance lookup_machines(const std::string& name, const FinSet& C, const FinSet& B,
                            const std::vector<std::string>& names, const std::vector<std::vector<long>>& tables) {
    if (names.size() != tables.size()) fail(Errc::invalid_argument, "one name per table");
    FinSet T = FinSet::make(name + ".T", names);
    std::vector<long> ev;
    for (const auto& tab : tables) {
        if (tab.size() != C.size()) fail(Errc::invalid_argument, "table width must equal the number of contexts");
        for (long v : tab) {
            if (v >= static_cast<long>(B.size())) fail(Errc::unknown_element, "table entry out of range");
            ev.push_back(v < 0 ? -1 : v);
        }
    }
    return TccInstance::make(name, T, C, B, FinRel::from_function(FinSet::product(T, C), B, ev),
                             Preorder::equality(B));
}

std::vector<std::vector<long>> all_tables(std::size_t nc, std::size_t nb, bool partial) {
    std::vector<std::vector<long>> out;
    std::size_t radix = nb + (partial ? 1 : 0);
    for (Odometer od(std::vector<std::size_t>(nc, radix)); !od.done(); od.next()) {
        std::vector<long> t(nc);
        for (std::size_t i = 0; i < nc; ++i) t[i] = static_cast<long>(od.digits()[i]) - (partial ? 1 : 0);
        out.push_back(t);
    }
    return out;
}

std::string table_name(const std::vector<long>& table) {
    std::string s = "t";
    for (long v : table) s += v < 0 ? std::string("_") : std::to_string(v);
    return s;
}

Simulator lookup_singleton(const TccInstance& inst, std::size_t u) {
    const FinSet& T = inst.T();
    const std::size_t nt = T.size(), nc = inst.C().size();
    if (u >= nt) fail(Errc::unknown_element, "machine index out of range");
    auto value = [&](std::size_t t, std::size_t c) -> long {
        const Bits& r = inst.eval_row(t, c);
        auto x = r.find_first();
        return x == Bits::npos ? -1 : static_cast<long>(x);
    };
    FinRel sT = FinRel::from_function(T, T, std::vector<long>(nt, static_cast<long>(u)));
    FinRel sC(FinSet::product(T, inst.C()), inst.C());
    for (std::size_t p = 0; p < nt; ++p)
        for (std::size_t c = 0; c < nc; ++c) {
            long want = value(p, c);
            long pick = -1;
            for (std::size_t c2 = 0; c2 < nc && pick < 0; ++c2)
                if (value(u, c2) == want) pick = static_cast<long>(c2);
            if (pick < 0) pick = static_cast<long>(c);
            sC.set(p * nc + c, static_cast<std::size_t>(pick));
        }
    return make_simulator(std::move(sT), std::move(sC), inst);
}

std::optional<Simulator> find_singleton_universal(const TccInstance& inst, const SearchOptions& opt) {
    for (std::size_t u = 0; u < inst.T().size(); ++u) {
        Simulator s = lookup_singleton(inst, u);
        if (find_universality_witness(s, inst, opt).witness) return s;
    }
    return std::nullopt;
}

bool poly_bound_check(const FinRel& f, const PolyCertificate& cert) {
    if (cert.dom_size.size() != f.dom().size() || cert.cod_size.size() != f.cod().size())
        fail(Errc::type_mismatch, "size measures must cover domain and codomain");
    for (const auto& c : cert.coeffs)
        if (c < 0) fail(Errc::invalid_argument, "polynomial coefficients must be nonnegative");
    for (const auto& s : cert.dom_size)
        if (s < 0) fail(Errc::invalid_argument, "size measures must be nonnegative");
    for (const auto& s : cert.cod_size)
        if (s < 0) fail(Errc::invalid_argument, "size measures must be nonnegative");
    auto p = [&](const Rational& x) {
        Rational acc(0);
        for (std::size_t k = cert.coeffs.size(); k-- > 0;) acc = acc * x + cert.coeffs[k];
        return acc;
    };
    for (auto [a, x] : f.pairs())
        if (cert.cod_size[x] > p(cert.dom_size[a])) return false;
    return true;
}

}  // namespace univsim
