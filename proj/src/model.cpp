#include "model.hpp"

#include "error.hpp"

#include <algorithm>
#include <set>

namespace univsim {

const std::string& Model::default_instance() const {
    if (tcc_order.empty()) fail(Errc::reference, "the document declares no tcc instance");
    return tcc_order.front();
}

const TccInstance& Model::instance(const std::string& name) const {
    auto it = tccs.find(name);
    if (it == tccs.end()) fail(Errc::reference, "unknown tcc instance '" + name + "'");
    return it->second;
}

const NamedSim& Model::simulator(const std::string& name) const {
    if (name == "trivial") return simulator(default_instance() + ".trivial");
    auto it = sims.find(name);
    if (it == sims.end()) fail(Errc::reference, "unknown simulator '" + name + "'");
    return it->second;
}

const FinRel& Model::rel(const std::string& name) const {
    auto it = rels.find(name);
    if (it == rels.end()) fail(Errc::reference, "unknown relation '" + name + "'");
    return it->second;
}

const TcFunctor& Model::functor(const std::string& name) const {
    auto it = functors.find(name);
    if (it == functors.end()) fail(Errc::reference, "unknown functor '" + name + "'");
    return it->second;
}

const NamedPhi& Model::phi(const std::string& name) const {
    auto it = phis.find(name);
    if (it == phis.end()) fail(Errc::reference, "unknown monotone function '" + name + "'");
    return it->second;
}

std::optional<std::string> Model::instance_with_targets(const FinSet& T) const {
    for (const auto& n : tcc_order)
        if (tccs.at(n).T() == T) return n;
    return std::nullopt;
}

std::optional<std::string> Model::instance_with_behaviors(const FinSet& B) const {
    for (const auto& n : tcc_order)
        if (tccs.at(n).B() == B) return n;
    return std::nullopt;
}

namespace {

using dsl::Block;
using dsl::Diagnostic;
using dsl::ElemRef;
using dsl::FieldsDecl;
using dsl::Kind;
using dsl::Span;
using dsl::Word;

struct Bail {};

const char* code_for(Errc c) {
    switch (c) {
    case Errc::type_mismatch: return "E-TYPE";
    case Errc::unknown_element: return "E-ELEM";
    case Errc::reference: return "E-REF";
    default: return "E-VALUE";
    }
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> c{"laws",    "universal",      "reduce", "nogo",         "parsimony",
                                            "lawvere", "unreachability", "cantor", "functor-check"};
    return c;
}

class Resolver {
public:
    explicit Resolver(const dsl::Document& doc) { m_.doc = doc; }

    LoadResult run() {
        const auto& blocks = m_.doc.blocks;
        auto pass = [&](Kind k, auto&& fn) {
            for (const auto& b : blocks)
                if (b.kind == k) guarded(b, [&] { fn(b); });
        };
        pass(Kind::set, [&](const Block& b) { set_block(b); });
        pass(Kind::spin, [&](const Block& b) { spin_block(b); });
        pass(Kind::preset, [&](const Block& b) { preset_block(b); });
        for (const auto& b : blocks)
            if (b.kind == Kind::tcc && field(b, "spin")) guarded(b, [&] { spin_tcc_block(b); });
        pass(Kind::rel, [&](const Block& b) { rel_block(b); });
        pass(Kind::preorder, [&](const Block& b) { preorder_block(b); });
        for (const auto& b : blocks)
            if (b.kind == Kind::tcc && !field(b, "spin")) guarded(b, [&] { tcc_block(b); });
        pass(Kind::simulator, [&](const Block& b) { sim_block(b); });
        pass(Kind::processing, [&](const Block& b) { proc_block(b); });
        pass(Kind::functor, [&](const Block& b) { functor_block(b); });
        pass(Kind::phi, [&](const Block& b) { phi_block(b); });
        pass(Kind::check, [&](const Block& b) { check_block(b); });
        // instances in declaration order, not resolution order
        std::vector<std::string> ordered;
        for (const auto& b : blocks)
            if ((b.kind == Kind::tcc || b.kind == Kind::preset) && m_.tccs.count(b.name.text) &&
                std::find(ordered.begin(), ordered.end(), b.name.text) == ordered.end())
                ordered.push_back(b.name.text);
        m_.tcc_order = ordered;
        std::stable_sort(diags_.begin(), diags_.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return std::tie(a.span.line, a.span.col) < std::tie(b.span.line, b.span.col);
        });
        LoadResult r;
        r.diagnostics = std::move(diags_);
        if (r.diagnostics.empty()) r.model = std::move(m_);
        return r;
    }

private:
    template <class F>
    void guarded(const Block& b, F&& fn) {
        try {
            fn();
        } catch (const Bail&) {
        } catch (const Error& e) {
            diags_.push_back({code_for(e.code()), std::string(kind_name(b.kind)) + " " + b.name.text + ": " + e.what(),
                              b.span});
        }
    }

    [[noreturn]] void error(const std::string& code, const std::string& msg, const Span& sp) {
        diags_.push_back({code, msg, sp});
        throw Bail{};
    }

    static const dsl::Field* field(const Block& b, const std::string& key) {
        const auto* f = std::get_if<FieldsDecl>(&b.body);
        if (!f) return nullptr;
        for (const auto& x : f->fields)
            if (x.key.text == key) return &x;
        return nullptr;
    }

    const Word& field_value(const Block& b, const std::string& key) {
        const dsl::Field* f = field(b, key);
        if (!f) error("E-KEY", std::string(kind_name(b.kind)) + " " + b.name.text + " needs '" + key + "'", b.span);
        return f->values.at(0);
    }

    template <class Map>
    void claim(Map& map, const std::string& name, const Span& sp, const char* what) {
        if (map.count(name)) error("E-DUP", std::string(what) + " '" + name + "' declared twice", sp);
    }

    const FinSet& set_ref(const Word& w) {
        auto it = m_.sets.find(w.text);
        if (it == m_.sets.end()) error("E-REF", "unknown set '" + w.text + "'", w.span);
        return it->second;
    }

    FinSet set_or_unit(const Word& w) { return w.text == "I" ? FinSet::unit() : set_ref(w); }

    FinSet type_ref(const dsl::TypeExpr& t) {
        std::vector<FinSet> fs;
        for (const auto& w : t.factors) fs.push_back(set_ref(w));
        return FinSet::product(fs);
    }

    std::size_t label_index(const FinSet& s, const Word& w) {
        auto i = s.find(w.text);
        if (!i) error("E-ELEM", "'" + w.text + "' is not an element of " + s.id(), w.span);
        return *i;
    }

    std::size_t elem_index(const FinSet& s, const ElemRef& e) {
        if (s.is_unit()) {
            if (!e.tuple || !e.parts.empty()) error("E-TYPE", "the only element of I is ()", e.span);
            return 0;
        }
        std::vector<FinSet> fs = s.factors();
        if (fs.size() == 1) {
            if (e.tuple) error("E-TYPE", "expected an element of " + s.id() + ", found a tuple", e.span);
            return label_index(s, e.parts[0]);
        }
        if (!e.tuple || e.parts.size() != fs.size())
            error("E-TYPE", "expected a " + std::to_string(fs.size()) + "-tuple for " + s.id(), e.span);
        std::vector<std::size_t> parts;
        for (std::size_t k = 0; k < fs.size(); ++k) parts.push_back(label_index(fs[k], e.parts[k]));
        return s.join(parts);
    }

    const TccInstance& inst_ref(const Word& w) {
        auto it = m_.tccs.find(w.text);
        if (it == m_.tccs.end()) error("E-REF", "unknown tcc instance '" + w.text + "'", w.span);
        return it->second;
    }

    const FinRel& rel_ref(const Word& w) {
        auto it = m_.rels.find(w.text);
        if (it == m_.rels.end()) error("E-REF", "unknown relation '" + w.text + "'", w.span);
        return it->second;
    }

    Rational number(const Word& w) {
        try {
            return parse_rational(w.text);
        } catch (const Error&) {
            error("E-VALUE", "'" + w.text + "' is not a number", w.span);
        }
    }

    long integer(const Word& w, long lo, long hi) {
        Rational q = number(w);
        if (q.denominator() != 1 || q.numerator() < lo || q.numerator() > hi)
            error("E-VALUE", "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]", w.span);
        return static_cast<long>(q.numerator());
    }

    void register_instance(const std::string& name, const TccInstance& inst, const Span& sp) {
        claim(m_.tccs, name, sp, "tcc instance");
        m_.tccs[name] = inst;
        for (auto [suffix, s] : {std::pair{".T", &inst.T()}, std::pair{".C", &inst.C()}, std::pair{".B", &inst.B()}})
            if (!m_.sets.count(name + suffix)) m_.sets[name + suffix] = *s;
        m_.sims[name + ".trivial"] = {name, trivial_simulator(inst)};
    }

    void set_block(const Block& b) {
        if (b.name.text == "I") error("E-VALUE", "I is the unit and cannot be redeclared", b.name.span);
        claim(m_.sets, b.name.text, b.name.span, "set");
        const auto& d = std::get<dsl::SetDecl>(b.body);
        std::set<std::string> seen;
        std::vector<std::string> labels;
        for (const auto& w : d.elems) {
            if (!seen.insert(w.text).second) error("E-DUP", "element '" + w.text + "' listed twice", w.span);
            labels.push_back(w.text);
        }
        m_.sets[b.name.text] = FinSet::make(b.name.text, labels);
    }

    void rel_block(const Block& b) {
        claim(m_.rels, b.name.text, b.name.span, "relation");
        const auto& d = std::get<dsl::RelDecl>(b.body);
        FinRel f(type_ref(d.dom), type_ref(d.cod));
        for (const auto& [a, x] : d.pairs) f.set(elem_index(f.dom(), a), elem_index(f.cod(), x));
        m_.rels[b.name.text] = f;
    }

    void preorder_block(const Block& b) {
        claim(m_.orders, b.name.text, b.name.span, "preorder");
        const auto& d = std::get<dsl::PreorderDecl>(b.body);
        const FinSet& X = set_ref(d.carrier);
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (const auto& [hi, lo] : d.edges) edges.emplace_back(label_index(X, hi), label_index(X, lo));
        m_.orders[b.name.text] = Preorder::closure(X, edges);
    }

    void tcc_block(const Block& b) {
        const FinSet& T = set_ref(field_value(b, "targets"));
        FinSet C = field(b, "contexts") ? set_or_unit(field_value(b, "contexts")) : FinSet::unit();
        const FinSet& B = set_ref(field_value(b, "behaviors"));
        const Word& ew = field_value(b, "eval");
        const FinRel& ev = rel_ref(ew);
        FinSet TC = FinSet::product(T, C);
        if (!(ev.dom() == TC) || !(ev.cod() == B))
            error("E-TYPE", "eval must be a relation " + TC.id() + " -> " + B.id(), ew.span);
        if (!classify(ev).functional) error("E-VALUE", "eval must be functional", ew.span);
        Preorder le = Preorder::equality(B);
        if (const dsl::Field* o = field(b, "order")) {
            const Word& w = o->values[0];
            auto it = m_.orders.find(w.text);
            if (it == m_.orders.end()) error("E-REF", "unknown preorder '" + w.text + "'", w.span);
            if (!(it->second.carrier() == B)) error("E-TYPE", "order must be a preorder on " + B.id(), w.span);
            le = it->second;
        }
        register_instance(b.name.text, TccInstance::make(b.name.text, T, C, B, ev, le), b.name.span);
    }

    void spin_tcc_block(const Block& b) {
        const dsl::Field* f = field(b, "spin");
        if (std::get<FieldsDecl>(b.body).fields.size() != 1)
            error("E-KEY", "a spin tcc takes only the 'spin' field", b.span);
        if (f->values.empty()) error("E-VALUE", "a spin tcc needs at least one spin system", f->key.span);
        std::vector<SpinSystem> sys;
        for (const auto& w : f->values) {
            auto it = m_.spins.find(w.text);
            if (it == m_.spins.end()) error("E-REF", "unknown spin system '" + w.text + "'", w.span);
            sys.push_back(it->second);
        }
        SpinTcc st = build_spin_tcc(b.name.text, sys);
        register_instance(b.name.text, st.inst, b.name.span);
        m_.spin_tccs[b.name.text] = std::move(st);
    }

    void spin_block(const Block& b) {
        claim(m_.spins, b.name.text, b.name.span, "spin system");
        const auto& d = std::get<dsl::SpinDecl>(b.body);
        if (d.field) {
            if (!d.vertices.empty() || d.levels || d.delta || !d.facets.empty())
                error("E-KEY", "'field' cannot be combined with other spin fields", d.field->span);
            SpinSystem h = field_system(static_cast<int>(integer(*d.field, 0, 12)));
            h.name = b.name.text;
            m_.spins[b.name.text] = h;
            return;
        }
        if (!d.delta) error("E-KEY", "spin system " + b.name.text + " needs 'delta'", b.span);
        SpinSystem h;
        h.name = b.name.text;
        h.q = d.levels ? static_cast<int>(integer(*d.levels, 1, 16)) : 2;
        h.delta = number(*d.delta);
        std::vector<std::string> vs;
        std::set<std::string> seen;
        for (const auto& w : d.vertices) {
            if (!seen.insert(w.text).second) error("E-DUP", "vertex '" + w.text + "' listed twice", w.span);
            vs.push_back(w.text);
        }
        FinSet V = FinSet::make("V", vs);
        std::vector<std::pair<std::vector<std::size_t>, std::vector<Rational>>> terms;
        for (const auto& fd : d.facets) {
            std::vector<std::size_t> e;
            for (const auto& w : fd.vertices) e.push_back(label_index(V, w));
            std::vector<std::size_t> sorted = e;
            std::sort(sorted.begin(), sorted.end());
            if (sorted != e)
                error("E-VALUE", "facet vertices must be listed in vertex order",
                      fd.vertices.empty() ? b.span : fd.vertices[0].span);
            std::vector<Rational> vals;
            for (const auto& w : fd.values) vals.push_back(number(w));
            terms.emplace_back(e, vals);
        }
        std::sort(terms.begin(), terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
        h.complex.vertices = V;
        for (auto& [e, vals] : terms) {
            h.complex.facets.push_back(e);
            h.local.push_back(vals);
        }
        h.validate();
        m_.spins[b.name.text] = h;
    }

    void preset_block(const Block& b) {
        const Word& kind = field_value(b, "kind");
        std::vector<std::string> args;
        if (const dsl::Field* a = field(b, "args"))
            for (const auto& w : a->values) args.push_back(w.text);
        if (std::find(preset_kinds().begin(), preset_kinds().end(), kind.text) == preset_kinds().end())
            error("E-VALUE", "unknown preset kind '" + kind.text + "'", kind.span);
        Preset p = build_preset(b.name.text, kind.text, args);
        register_instance(b.name.text, p.inst, b.name.span);
        for (const auto& [suffix, s] : p.sims) m_.sims[b.name.text + "." + suffix] = {b.name.text, s};
        if (p.spin) m_.spin_tccs[b.name.text] = *p.spin;
        if (p.phi) m_.phis[b.name.text + ".phi"] = {b.name.text, *p.phi};
    }

    void sim_block(const Block& b) {
        claim(m_.sims, b.name.text, b.name.span, "simulator");
        const auto& d = std::get<FieldsDecl>(b.body);
        const TccInstance& inst = inst_ref(*d.on);
        if (field(b, "trivial")) {
            if (d.fields.size() != 1) error("E-KEY", "'trivial' takes no other fields", b.span);
            m_.sims[b.name.text] = {d.on->text, trivial_simulator(inst)};
            return;
        }
        const Word& cw = field_value(b, "compiler");
        const FinRel& sT = rel_ref(cw);
        FinRel sC;
        if (const dsl::Field* c = field(b, "contexts")) {
            sC = rel_ref(c->values[0]);
        } else {
            // contexts pass through unchanged
            sC = tensor(del(sT.dom()), identity(inst.C()));
        }
        try {
            m_.sims[b.name.text] = {d.on->text, make_simulator(sT, sC, inst)};
        } catch (const Error& e) {
            error(code_for(e.code()), "simulator " + b.name.text + ": " + e.what(), cw.span);
        }
    }

    void proc_block(const Block& b) {
        claim(m_.procs, b.name.text, b.name.span, "processing");
        const auto& d = std::get<FieldsDecl>(b.body);
        const TccInstance& inst = inst_ref(*d.on);
        const Word& tw = field_value(b, "target");
        const Word& cw = field_value(b, "context");
        m_.procs[b.name.text] = {d.on->text, make_processing(rel_ref(tw), rel_ref(cw), inst)};
    }

    void functor_block(const Block& b) {
        claim(m_.functors, b.name.text, b.name.span, "functor");
        const auto& d = std::get<dsl::FunctorDecl>(b.body);
        const TccInstance& src = inst_ref(d.source);
        const TccInstance& dst = inst_ref(d.target);
        std::vector<AtomMap> atoms;
        for (const auto& mp : d.maps) {
            const FinSet& X = set_ref(mp.from);
            const FinSet& Y = set_ref(mp.to);
            if (X.is_product() || Y.is_product()) error("E-TYPE", "object maps are given on atomic sets", mp.from.span);
            std::vector<long> img(X.size(), -1);
            for (const auto& [a, y] : mp.pairs) {
                std::size_t i = label_index(X, a);
                if (img[i] >= 0) error("E-DUP", "'" + a.text + "' mapped twice", a.span);
                img[i] = static_cast<long>(label_index(Y, y));
            }
            for (std::size_t i = 0; i < X.size(); ++i)
                if (img[i] < 0) error("E-VALUE", "element '" + X.label(i) + "' of " + X.id() + " is not mapped", mp.from.span);
            AtomMap am{X, Y, {}};
            for (long v : img) am.image.push_back(static_cast<std::size_t>(v));
            atoms.push_back(std::move(am));
        }
        m_.functors[b.name.text] = TcFunctor(b.name.text, std::move(atoms), src, dst);
    }

    void phi_block(const Block& b) {
        claim(m_.phis, b.name.text, b.name.span, "monotone function");
        const auto& d = std::get<dsl::PhiDecl>(b.body);
        const TccInstance& inst = inst_ref(d.on);
        if (d.spectrum) {
            auto it = m_.spin_tccs.find(d.on.text);
            if (it == m_.spin_tccs.end()) error("E-TYPE", "'spectrum' needs a spin instance", d.on.span);
            if (!d.values.empty() || d.empty) error("E-KEY", "'spectrum' takes no explicit values", b.span);
            m_.phis[b.name.text] = {d.on.text, reduced_spectrum_size(it->second)};
            return;
        }
        MonotoneFn phi;
        std::vector<std::optional<Rational>> v(inst.T().size());
        for (const auto& [t, x] : d.values) {
            std::size_t i = label_index(inst.T(), t);
            if (v[i]) error("E-DUP", "value for '" + t.text + "' given twice", t.span);
            v[i] = number(x);
        }
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i]) error("E-VALUE", "no value for target '" + inst.T().label(i) + "'", b.span);
            phi.point.push_back(*v[i]);
        }
        phi.empty = d.empty ? number(*d.empty) : Rational(0);
        m_.phis[b.name.text] = {d.on.text, phi};
    }

    void check_block(const Block& b) {
        for (const auto& c : m_.checks)
            if (c.name == b.name.text) error("E-DUP", "check '" + b.name.text + "' declared twice", b.name.span);
        const dsl::Field* run = field(b, "run");
        if (!run || run->values.empty()) error("E-KEY", "check " + b.name.text + " needs 'run'", b.span);
        const Word& cmd = run->values[0];
        if (std::find(command_names().begin(), command_names().end(), cmd.text) == command_names().end())
            error("E-VALUE", "unknown command '" + cmd.text + "'", cmd.span);
        CheckSpec c{b.name.text, {}, field_value(b, "expect").text, b.span};
        for (const auto& w : run->values) c.run.push_back(w.text);
        m_.checks.push_back(std::move(c));
    }

    Model m_;
    std::vector<Diagnostic> diags_;
};

}  // namespace

LoadResult resolve(const dsl::Document& doc) { return Resolver(doc).run(); }

LoadResult load_model(std::string_view text) {
    dsl::ParseResult p = dsl::parse(text);
    if (!p.ok()) return {std::nullopt, std::move(p.diagnostics)};
    return resolve(p.doc);
}

}  // namespace univsim
