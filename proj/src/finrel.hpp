#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace univsim {

using Bits = boost::dynamic_bitset<std::uint64_t>;

// A finite labeled set. Products are kept flat (strictly associative, I is a
// strict unit), so A*(B*C) and (A*B)*C are the same object.
class FinSet {
public:
    FinSet();  // the unit I
    static FinSet make(std::string id, std::vector<std::string> labels);
    static FinSet unit();
    static FinSet product(const std::vector<FinSet>& factors);
    static FinSet product(const FinSet& a, const FinSet& b) { return product({a, b}); }

    const std::string& id() const;
    std::size_t size() const;
    const std::string& label(std::size_t i) const;
    const std::vector<std::string>& labels() const;
    std::optional<std::size_t> find(std::string_view label) const;
    std::size_t index(std::string_view label) const;  // throws unknown_element

    bool is_unit() const;
    bool is_product() const;
    // Atomic factors; a non-product set is its own single factor, I has none.
    std::vector<FinSet> factors() const;
    std::vector<std::size_t> split(std::size_t i) const;
    std::size_t join(const std::vector<std::size_t>& parts) const;

    friend bool operator==(const FinSet& a, const FinSet& b);

private:
    struct Impl;
    explicit FinSet(std::shared_ptr<const Impl> p) : p_(std::move(p)) {}
    std::shared_ptr<const Impl> p_;
};

struct MorphismClass {
    bool functional = false;
    bool total = false;
    bool normalized = false;
    bool deterministic = false;
    friend bool operator==(const MorphismClass&, const MorphismClass&) = default;
};

// Relation A -> X as a dense boolean matrix, one bitset row per element of A.
class FinRel {
public:
    FinRel() : FinRel(FinSet::unit(), FinSet::unit()) {}  // empty I -> I
    FinRel(FinSet dom, FinSet cod);

    // image[a] = index in cod, or -1 for undefined
    static FinRel from_function(FinSet dom, FinSet cod, const std::vector<long>& image);
    static FinRel from_pairs(FinSet dom, FinSet cod,
                             const std::vector<std::pair<std::size_t, std::size_t>>& pairs);

    const FinSet& dom() const { return dom_; }
    const FinSet& cod() const { return cod_; }
    bool test(std::size_t a, std::size_t x) const { return rows_[a].test(x); }
    void set(std::size_t a, std::size_t x, bool v = true) { rows_[a].set(x, v); }
    const Bits& row(std::size_t a) const { return rows_[a]; }
    void set_row(std::size_t a, const Bits& r);
    std::size_t pair_count() const;
    bool empty() const;
    // -1 when undefined; throws not_functional when multi-valued
    long image(std::size_t a) const;
    std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

    friend bool operator==(const FinRel& a, const FinRel& b);

private:
    FinSet dom_, cod_;
    std::vector<Bits> rows_;
};

FinRel compose(const FinRel& g, const FinRel& f);  // g after f
FinRel tensor(const FinRel& f, const FinRel& g);
FinRel tensor(const std::vector<FinRel>& fs);

enum class Structural { copy, del, swap, identity };
FinRel structural(Structural kind, const FinSet& a, const FinSet& b = FinSet::unit());
FinRel identity(const FinSet& a);
FinRel copy(const FinSet& a);
FinRel del(const FinSet& a);
FinRel swap(const FinSet& a, const FinSet& b);
FinRel empty_rel(const FinSet& a, const FinSet& x);

FinRel domain(const FinRel& f);
FinRel domain_direct(const FinRel& f);
FinRel domain_diagram(const FinRel& f);

MorphismClass classify(const FinRel& f);
MorphismClass classify_direct(const FinRel& f);
MorphismClass classify_diagram(const FinRel& f);

bool restricts_to(const FinRel& f, const FinRel& g);

struct Support {
    FinSet set;
    FinRel inclusion;  // set -> cod(f), deterministic
};
Support support(const FinRel& f);
// Joint (x, h(w,x)) for x drawn through f; equal for h,h' iff they agree on W x supp(f).
FinRel support_probe(const FinRel& f, const FinRel& h);
bool support_factorization_holds(const FinRel& f, const FinRel& h, const FinRel& h2);

// States I -> A.
FinRel point(const FinSet& a, std::size_t i);
FinRel state(const FinSet& a, const Bits& members);
std::vector<FinRel> functional_states(const FinSet& a);  // empty first, then points

std::uint64_t hash_of(const FinSet& s);
std::uint64_t hash_of(const FinRel& f);
void hash_mix(std::uint64_t& h, std::string_view bytes);
void hash_mix(std::uint64_t& h, std::uint64_t v);
constexpr std::uint64_t hash_seed = 1469598103934665603ULL;

}  // namespace univsim
