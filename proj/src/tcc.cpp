#include "tcc.hpp"

#include "error.hpp"

namespace univsim {

TccInstance TccInstance::make(std::string name, FinSet T, FinSet C, FinSet B, FinRel eval, Preorder brel) {
    TccInstance inst;
    inst.name_ = std::move(name);
    inst.T_ = std::move(T);
    inst.C_ = std::move(C);
    inst.TC_ = FinSet::product(inst.T_, inst.C_);
    if (!(eval.dom() == inst.TC_)) fail(Errc::type_mismatch, "eval must have domain " + inst.TC_.id());
    if (!(eval.cod() == B)) fail(Errc::type_mismatch, "eval must have codomain " + B.id());
    if (!(brel.carrier() == B)) fail(Errc::type_mismatch, "behavioral order must live on " + B.id());
    if (!classify_direct(eval).functional) fail(Errc::not_functional, "eval must be functional");
    inst.beh_ = BehaviorStructure{std::move(B), std::move(brel), std::move(eval)};
    return inst;
}

FinRel behavior_of(const FinRel& f, const TccInstance& inst) {
    if (!(f.cod() == inst.TC())) fail(Errc::type_mismatch, "expected a morphism into " + inst.TC().id());
    return compose(inst.eval(), f);
}

bool ambient_imitates(const FinRel& f, const FinRel& g, const TccInstance& inst) {
    if (!(f.dom() == g.dom())) fail(Errc::type_mismatch, "ambient_imitates: domains differ");
    return imitates(behavior_of(f, inst), behavior_of(g, inst), inst.brel());
}

bool scalar_dominance_check(const FinRel& w, const FinRel& f, const TccInstance& inst) {
    if (!w.dom().is_unit() || !w.cod().is_unit()) fail(Errc::type_mismatch, "scalar must be I -> I");
    return ambient_imitates(f, tensor(w, f), inst);
}

TccInstance intrinsify(const TccInstance& inst) {
    const FinSet& tc = inst.TC();
    const std::size_t n = tc.size();
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (imitates_row(inst.eval().row(i), inst.eval().row(j), inst.brel())) edges.emplace_back(i, j);
        }
    Preorder p = Preorder::closure(tc, edges);
    ensure(p.edges() == edges, "intrinsified order is not transitive");
    TccInstance out = TccInstance::make(inst.name() + "'", inst.T(), inst.C(), tc, identity(tc), std::move(p));
    return out;
}

}  // namespace univsim
