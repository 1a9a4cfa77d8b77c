#pragma once

#include "finrel.hpp"
#include "order.hpp"

#include <string>

namespace univsim {

struct BehaviorStructure {
    FinSet B;
    Preorder brel;
    FinRel eval;  // T*C -> B, functional, possibly partial
};

class TccInstance {
public:
    TccInstance() = default;
    static TccInstance make(std::string name, FinSet T, FinSet C, FinSet B, FinRel eval, Preorder brel);

    const std::string& name() const { return name_; }
    const FinSet& T() const { return T_; }
    const FinSet& C() const { return C_; }
    const FinSet& B() const { return beh_.B; }
    const FinSet& TC() const { return TC_; }
    const FinRel& eval() const { return beh_.eval; }
    const Preorder& brel() const { return beh_.brel; }
    const BehaviorStructure& behavior() const { return beh_; }
    bool intrinsic() const { return intrinsic_; }

    // eval(t, c) as a bit row over B
    const Bits& eval_row(std::size_t t, std::size_t c) const { return beh_.eval.row(t * C_.size() + c); }

private:
    std::string name_;
    FinSet T_, C_, TC_;
    BehaviorStructure beh_;
    bool intrinsic_ = true;
};

FinRel behavior_of(const FinRel& f, const TccInstance& inst);
bool ambient_imitates(const FinRel& f, const FinRel& g, const TccInstance& inst);
bool scalar_dominance_check(const FinRel& w, const FinRel& f, const TccInstance& inst);
TccInstance intrinsify(const TccInstance& inst);

}  // namespace univsim
