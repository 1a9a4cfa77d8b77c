#include "finrel.hpp"

#include "error.hpp"

#include <random>
#include <unordered_map>
#include <unordered_set>

namespace univsim {

struct FinSet::Impl {
    std::string id;
    std::vector<std::string> labels;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<FinSet> factors;  // atomic factors; empty for I
    std::vector<std::size_t> strides;
    bool product = false;
};

FinSet::FinSet() : p_(unit().p_) {}

FinSet FinSet::unit() {
    static const FinSet u = [] {
        auto impl = std::make_shared<Impl>();
        impl->id = "I";
        impl->labels = {"\xE2\x80\xA2"};  // bullet
        impl->index.emplace(impl->labels[0], 0);
        return FinSet(std::shared_ptr<const Impl>(impl));
    }();
    return u;
}

FinSet FinSet::make(std::string id, std::vector<std::string> labels) {
    if (id.empty()) fail(Errc::invalid_argument, "set id must be nonempty");
    if (id == "I") return unit();
    auto impl = std::make_shared<Impl>();
    impl->id = std::move(id);
    impl->labels = std::move(labels);
    for (std::size_t i = 0; i < impl->labels.size(); ++i) {
        if (!impl->index.emplace(impl->labels[i], i).second)
            fail(Errc::invalid_argument, "duplicate element '" + impl->labels[i] + "' in set " + impl->id);
    }
    return FinSet(std::shared_ptr<const Impl>(impl));
}

FinSet FinSet::product(const std::vector<FinSet>& factors) {
    std::vector<FinSet> flat;
    for (const auto& f : factors) {
        if (f.is_unit()) continue;
        if (f.is_product())
            for (const auto& g : f.p_->factors) flat.push_back(g);
        else
            flat.push_back(f);
    }
    if (flat.empty()) return unit();
    if (flat.size() == 1) return flat[0];

    auto impl = std::make_shared<Impl>();
    impl->product = true;
    impl->factors = flat;
    std::size_t n = 1;
    for (const auto& f : flat) n *= f.size();
    impl->strides.assign(flat.size(), 1);
    for (std::size_t k = flat.size(); k-- > 1;) impl->strides[k - 1] = impl->strides[k] * flat[k].size();
    for (std::size_t k = 0; k < flat.size(); ++k) impl->id += (k ? "*" : "") + flat[k].id();
    impl->labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::string l = "(";
        std::size_t rem = i;
        for (std::size_t k = 0; k < flat.size(); ++k) {
            std::size_t part = rem / impl->strides[k];
            rem %= impl->strides[k];
            if (k) l += ",";
            l += flat[k].label(part);
        }
        l += ")";
        impl->labels.push_back(std::move(l));
    }
    // tuple labels may collide when atomic labels contain commas; lookups go through join()
    for (std::size_t i = 0; i < n; ++i) impl->index.emplace(impl->labels[i], i);
    return FinSet(std::shared_ptr<const Impl>(impl));
}

const std::string& FinSet::id() const { return p_->id; }
std::size_t FinSet::size() const { return p_->labels.size(); }
const std::string& FinSet::label(std::size_t i) const { return p_->labels.at(i); }
const std::vector<std::string>& FinSet::labels() const { return p_->labels; }

std::optional<std::size_t> FinSet::find(std::string_view label) const {
    auto it = p_->index.find(std::string(label));
    if (it == p_->index.end()) return std::nullopt;
    return it->second;
}

std::size_t FinSet::index(std::string_view label) const {
    auto i = find(label);
    if (!i) fail(Errc::unknown_element, "no element '" + std::string(label) + "' in set " + id());
    return *i;
}

bool FinSet::is_unit() const { return p_->id == "I" && !p_->product; }
bool FinSet::is_product() const { return p_->product; }

std::vector<FinSet> FinSet::factors() const {
    if (p_->product) return p_->factors;
    if (is_unit()) return {};
    return {*this};
}

std::vector<std::size_t> FinSet::split(std::size_t i) const {
    if (!p_->product) return {i};
    std::vector<std::size_t> out(p_->factors.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = i / p_->strides[k];
        i %= p_->strides[k];
    }
    return out;
}

std::size_t FinSet::join(const std::vector<std::size_t>& parts) const {
    if (!p_->product) {
        if (parts.size() != 1) fail(Errc::type_mismatch, "tuple arity mismatch for set " + id());
        return parts[0];
    }
    if (parts.size() != p_->factors.size()) fail(Errc::type_mismatch, "tuple arity mismatch for set " + id());
    std::size_t i = 0;
    for (std::size_t k = 0; k < parts.size(); ++k) i += parts[k] * p_->strides[k];
    return i;
}

bool operator==(const FinSet& a, const FinSet& b) {
    if (a.p_ == b.p_) return true;
    if (a.p_->id != b.p_->id || a.p_->product != b.p_->product) return false;
    if (a.p_->product) {
        if (a.p_->factors.size() != b.p_->factors.size()) return false;
        for (std::size_t k = 0; k < a.p_->factors.size(); ++k)
            if (!(a.p_->factors[k] == b.p_->factors[k])) return false;
        return true;
    }
    return a.p_->labels == b.p_->labels;
}

// ---------------------------------------------------------------------------

FinRel::FinRel(FinSet dom, FinSet cod) : dom_(std::move(dom)), cod_(std::move(cod)) {
    rows_.assign(dom_.size(), Bits(cod_.size()));
}

FinRel FinRel::from_function(FinSet dom, FinSet cod, const std::vector<long>& image) {
    FinRel f(std::move(dom), std::move(cod));
    if (image.size() != f.dom_.size()) fail(Errc::type_mismatch, "function table size mismatch");
    for (std::size_t a = 0; a < image.size(); ++a) {
        if (image[a] < 0) continue;
        if (static_cast<std::size_t>(image[a]) >= f.cod_.size()) fail(Errc::unknown_element, "image out of range");
        f.rows_[a].set(static_cast<std::size_t>(image[a]));
    }
    return f;
}

FinRel FinRel::from_pairs(FinSet dom, FinSet cod, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
    FinRel f(std::move(dom), std::move(cod));
    for (auto [a, x] : pairs) {
        if (a >= f.dom_.size() || x >= f.cod_.size()) fail(Errc::unknown_element, "pair out of range");
        f.rows_[a].set(x);
    }
    return f;
}

void FinRel::set_row(std::size_t a, const Bits& r) {
    if (r.size() != cod_.size()) fail(Errc::type_mismatch, "row width mismatch");
    rows_[a] = r;
}

std::size_t FinRel::pair_count() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.count();
    return n;
}

bool FinRel::empty() const {
    for (const auto& r : rows_)
        if (r.any()) return false;
    return true;
}

long FinRel::image(std::size_t a) const {
    const Bits& r = rows_[a];
    auto x = r.find_first();
    if (x == Bits::npos) return -1;
    if (r.find_next(x) != Bits::npos) fail(Errc::not_functional, "row '" + dom_.label(a) + "' is multi-valued");
    return static_cast<long>(x);
}

std::vector<std::pair<std::size_t, std::size_t>> FinRel::pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < rows_.size(); ++a)
        for (auto x = rows_[a].find_first(); x != Bits::npos; x = rows_[a].find_next(x)) out.emplace_back(a, x);
    return out;
}

bool operator==(const FinRel& a, const FinRel& b) {
    return a.dom_ == b.dom_ && a.cod_ == b.cod_ && a.rows_ == b.rows_;
}

FinRel compose(const FinRel& g, const FinRel& f) {
    if (!(f.cod() == g.dom()))
        fail(Errc::type_mismatch, "cannot compose: codomain " + f.cod().id() + " is not domain " + g.dom().id());
    FinRel out(f.dom(), g.cod());
    Bits acc(g.cod().size());
    for (std::size_t a = 0; a < f.dom().size(); ++a) {
        acc.reset();
        const Bits& r = f.row(a);
        for (auto x = r.find_first(); x != Bits::npos; x = r.find_next(x)) acc |= g.row(x);
        out.set_row(a, acc);
    }
    return out;
}

FinRel tensor(const FinRel& f, const FinRel& g) {
    FinSet dom = FinSet::product(f.dom(), g.dom());
    FinSet cod = FinSet::product(f.cod(), g.cod());
    FinRel out(dom, cod);
    const std::size_t nb = g.dom().size(), ny = g.cod().size();
    for (std::size_t a = 0; a < f.dom().size(); ++a)
        for (std::size_t b = 0; b < nb; ++b) {
            const Bits& fr = f.row(a);
            const Bits& gr = g.row(b);
            if (fr.none() || gr.none()) continue;
            std::size_t row = a * nb + b;
            for (auto x = fr.find_first(); x != Bits::npos; x = fr.find_next(x))
                for (auto y = gr.find_first(); y != Bits::npos; y = gr.find_next(y)) out.set(row, x * ny + y);
        }
    return out;
}

FinRel tensor(const std::vector<FinRel>& fs) {
    FinRel acc = identity(FinSet::unit());
    for (const auto& f : fs) acc = tensor(acc, f);
    return acc;
}

FinRel identity(const FinSet& a) {
    FinRel f(a, a);
    for (std::size_t i = 0; i < a.size(); ++i) f.set(i, i);
    return f;
}

FinRel copy(const FinSet& a) {
    FinRel f(a, FinSet::product(a, a));
    for (std::size_t i = 0; i < a.size(); ++i) f.set(i, i * a.size() + i);
    return f;
}

FinRel del(const FinSet& a) {
    FinRel f(a, FinSet::unit());
    for (std::size_t i = 0; i < a.size(); ++i) f.set(i, 0);
    return f;
}

FinRel swap(const FinSet& a, const FinSet& b) {
    FinRel f(FinSet::product(a, b), FinSet::product(b, a));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) f.set(i * b.size() + j, j * a.size() + i);
    return f;
}

FinRel empty_rel(const FinSet& a, const FinSet& x) { return FinRel(a, x); }

FinRel structural(Structural kind, const FinSet& a, const FinSet& b) {
    switch (kind) {
    case Structural::copy: return copy(a);
    case Structural::del: return del(a);
    case Structural::swap: return swap(a, b);
    case Structural::identity: return identity(a);
    }
    fail(Errc::invalid_argument, "unknown structural kind");
}

FinRel domain_direct(const FinRel& f) {
    FinRel d(f.dom(), f.dom());
    for (std::size_t a = 0; a < f.dom().size(); ++a)
        if (f.row(a).any()) d.set(a, a);
    return d;
}

FinRel domain_diagram(const FinRel& f) {
    // (del_X (x) id_A) . (f (x) id_A) . copy_A
    const FinSet& a = f.dom();
    FinRel g = compose(tensor(f, identity(a)), copy(a));
    return compose(tensor(del(f.cod()), identity(a)), g);
}

FinRel domain(const FinRel& f) {
    FinRel d = domain_direct(f);
    ensure(d == domain_diagram(f), "domain: diagram and direct restriction disagree");
    return d;
}

MorphismClass classify_direct(const FinRel& f) {
    MorphismClass c;
    c.functional = true;
    c.total = true;
    for (std::size_t a = 0; a < f.dom().size(); ++a) {
        std::size_t n = f.row(a).count();
        if (n > 1) c.functional = false;
        if (n == 0) c.total = false;
    }
    c.normalized = true;  // every relation restricts to itself on its domain
    c.deterministic = c.functional && c.total;
    return c;
}

MorphismClass classify_diagram(const FinRel& f) {
    MorphismClass c;
    c.functional = compose(copy(f.cod()), f) == compose(tensor(f, f), copy(f.dom()));
    c.total = compose(del(f.cod()), f) == del(f.dom());
    c.normalized = compose(f, domain_diagram(f)) == f;
    c.deterministic = c.functional && c.total;
    return c;
}

MorphismClass classify(const FinRel& f) {
    MorphismClass d = classify_direct(f);
    MorphismClass g = classify_diagram(f);
    ensure(d == g, "classify: combinatorial and diagrammatic classifications disagree");
    ensure(g.normalized, "relation is not normalized");
    return d;
}

bool restricts_to(const FinRel& f, const FinRel& g) {
    if (!(f.dom() == g.dom()) || !(f.cod() == g.cod()))
        fail(Errc::type_mismatch, "restricts_to: relations have different types");
    return compose(f, domain(g)) == g;
}

FinRel point(const FinSet& a, std::size_t i) {
    FinRel s(FinSet::unit(), a);
    s.set(0, i);
    return s;
}

FinRel state(const FinSet& a, const Bits& members) {
    FinRel s(FinSet::unit(), a);
    s.set_row(0, members);
    return s;
}

std::vector<FinRel> functional_states(const FinSet& a) {
    std::vector<FinRel> out;
    out.emplace_back(FinSet::unit(), a);
    for (std::size_t i = 0; i < a.size(); ++i) out.push_back(point(a, i));
    return out;
}

// ---------------------------------------------------------------------------

namespace {

Support support_plain(const FinRel& f) {
    Bits u(f.cod().size());
    for (std::size_t a = 0; a < f.dom().size(); ++a) u |= f.row(a);
    std::vector<std::string> labels;
    std::vector<long> incl;
    for (auto x = u.find_first(); x != Bits::npos; x = u.find_next(x)) {
        labels.push_back(f.cod().label(x));
        incl.push_back(static_cast<long>(x));
    }
    FinSet s = FinSet::make("supp(" + f.cod().id() + ")", labels);
    return {s, FinRel::from_function(s, f.cod(), incl)};
}

}  // namespace

FinRel support_probe(const FinRel& f, const FinRel& h) {
    // h : W*X -> Y.  Result W*A -> X*Y, (w,a) |-> {(x,y) | x in f(a), y in h(w,x)}
    const FinSet& x = f.cod();
    const auto hf = h.dom().factors();
    if (h.dom().is_product() == false || hf.size() < 2 || !(hf.back() == x))
        fail(Errc::type_mismatch, "support probe expects h : W*X -> Y with atomic X");
    std::vector<FinSet> wf(hf.begin(), hf.end() - 1);
    FinSet w = FinSet::product(wf);
    FinRel step = tensor(identity(w), f);                                   // W*A -> W*X
    step = compose(tensor(identity(w), copy(x)), step);                      // -> W*X*X
    step = compose(tensor(swap(w, x), identity(x)), step);                   // -> X*W*X
    return compose(tensor(identity(x), h), step);                            // -> X*Y
}

bool support_factorization_holds(const FinRel& f, const FinRel& h, const FinRel& h2) {
    Support s = support_plain(f);
    const auto hf = h.dom().factors();
    std::vector<FinSet> wf(hf.begin(), hf.end() - 1);
    FinSet w = FinSet::product(wf);
    bool lhs = support_probe(f, h) == support_probe(f, h2);
    FinRel restrict = tensor(identity(w), s.inclusion);
    bool rhs = compose(h, restrict) == compose(h2, restrict);
    return lhs == rhs;
}

Support support(const FinRel& f) {
    Support s = support_plain(f);
    if (f.cod().is_product() || f.cod().size() == 0) return s;
    // sampled check of the faithfulness property with W = Y = {0,1}
    std::mt19937 rng(static_cast<std::uint32_t>(hash_of(f)));
    FinSet w = FinSet::make("W", {"0", "1"});
    FinSet y = FinSet::make("Y", {"0", "1"});
    FinSet wx = FinSet::product(w, f.cod());
    for (int trial = 0; trial < 4; ++trial) {
        FinRel h(wx, y);
        for (std::size_t i = 0; i < wx.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j) h.set(i, j, rng() & 1);
        FinRel h2 = h;
        std::size_t i = rng() % wx.size(), j = rng() % y.size();
        h2.set(i, j, !h2.test(i, j));
        ensure(support_factorization_holds(f, h, h2), "support factorization property");
        ensure(support_factorization_holds(f, h, h), "support factorization property (reflexive)");
    }
    return s;
}

// ---------------------------------------------------------------------------

void hash_mix(std::uint64_t& h, std::string_view bytes) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    h ^= 0xff;
    h *= 1099511628211ULL;
}

void hash_mix(std::uint64_t& h, std::uint64_t v) {
    for (int k = 0; k < 8; ++k) {
        h ^= (v >> (8 * k)) & 0xff;
        h *= 1099511628211ULL;
    }
}

std::uint64_t hash_of(const FinSet& s) {
    std::uint64_t h = hash_seed;
    hash_mix(h, s.id());
    hash_mix(h, static_cast<std::uint64_t>(s.size()));
    if (!s.is_product())
        for (const auto& l : s.labels()) hash_mix(h, l);
    else
        for (const auto& f : s.factors()) hash_mix(h, hash_of(f));
    return h;
}

std::uint64_t hash_of(const FinRel& f) {
    std::uint64_t h = hash_seed;
    hash_mix(h, hash_of(f.dom()));
    hash_mix(h, hash_of(f.cod()));
    for (auto [a, x] : f.pairs()) {
        hash_mix(h, static_cast<std::uint64_t>(a));
        hash_mix(h, static_cast<std::uint64_t>(x));
    }
    return h;
}

}  // namespace univsim
