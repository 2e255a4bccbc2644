#include "lgp/functional.hpp"

#include <string>

namespace lgp {

namespace {

void check_component(int k, int d, const char* what) {
    if (k < 0 || k >= d) throw std::out_of_range(std::string(what) + ": component index out of range");
}

}  // namespace

Functional::Functional(std::vector<Term> terms) : terms_(std::move(terms)) {
    const int d = dim();
    for (const auto& t : terms_) {
        if (t.point.dim() != d) throw DimensionError("Functional: terms anchored in different dimensions");
        if (t.index.max_coord() >= d) throw DimensionError("Functional: multi-index exceeds point dimension");
    }
}

Functional& Functional::add(double weight, const PhasePoint& point, const MultiIndex& index) {
    if (!terms_.empty() && point.dim() != dim())
        throw DimensionError("Functional: terms anchored in different dimensions");
    if (index.max_coord() >= point.dim()) throw DimensionError("Functional: multi-index exceeds point dimension");
    terms_.push_back({weight, point, index});
    return *this;
}

int Functional::dim() const { return terms_.empty() ? 0 : terms_.front().point.dim(); }

Functional Functional::scaled(double factor) const {
    Functional out = *this;
    for (auto& t : out.terms_) t.weight *= factor;
    return out;
}

Functional operator+(const Functional& a, const Functional& b) {
    Functional out = a;
    for (const auto& t : b.terms_) out.add(t.weight, t.point, t.index);
    return out;
}

Functional operator-(const Functional& a, const Functional& b) { return a + b.scaled(-1.0); }

Functional el_functional(const JetPoint& jet, int k) {
    const int d = jet.half_dim();
    check_component(k, d, "el_functional");
    if (jet.accel.size() != d) throw DimensionError("el_functional: acceleration length mismatch");
    const Vector velocity = jet.base.second();
    Functional phi;
    for (int i = 0; i < d; ++i) phi.add(jet.accel[i], jet.base, MultiIndex::second(d + k, d + i));
    for (int i = 0; i < d; ++i) phi.add(velocity[i], jet.base, MultiIndex::second(d + k, i));
    phi.add(-1.0, jet.base, MultiIndex::first(k));
    return phi;
}

Functional del_functional(const SnapshotTriple& triple, int k) {
    const int d = triple.half_dim();
    check_component(k, d, "del_functional");
    if (triple.x1.size() != d || triple.x2.size() != d) throw DimensionError("del_functional: snapshot length mismatch");
    Functional phi;
    phi.add(1.0, triple.first_pair(), MultiIndex::first(d + k));
    phi.add(1.0, triple.second_pair(), MultiIndex::first(k));
    return phi;
}

Functional momentum_functional(const PhasePoint& point, int k, MomentumVariant variant) {
    const int d = point.half_dim();
    check_component(k, d, "momentum_functional");
    Functional phi;
    switch (variant) {
        case MomentumVariant::Continuous:
        case MomentumVariant::DiscretePlus: phi.add(1.0, point, MultiIndex::first(d + k)); break;
        case MomentumVariant::DiscreteMinus: phi.add(-1.0, point, MultiIndex::first(k)); break;
    }
    return phi;
}

Functional eval_functional(const PhasePoint& point) {
    Functional phi;
    phi.add(1.0, point, MultiIndex::zero());
    return phi;
}

Functional partial_functional(const PhasePoint& point, const MultiIndex& alpha) {
    Functional phi;
    phi.add(1.0, point, alpha);
    return phi;
}

double apply(const Functional& phi, const Lagrangian& lagrangian) {
    double sum = 0.0;
    for (const auto& t : phi.terms()) {
        lagrangian.check_point(t.point);
        sum += t.weight * lagrangian.partial(t.index, t.point);
    }
    return sum;
}

double pair_left(const Functional& phi, const Kernel& kernel, const PhasePoint& y) {
    return pair_left_partial(phi, kernel, MultiIndex::zero(), y);
}

double pair_left_partial(const Functional& phi, const Kernel& kernel, const MultiIndex& beta, const PhasePoint& y) {
    kernel.check_dim(y.coords());
    if (beta.max_coord() >= kernel.dim()) throw DimensionError("pair_left_partial: multi-index exceeds dimension");
    double sum = 0.0;
    for (const auto& t : phi.terms()) {
        const KernelPairDerivatives kd(kernel, t.point.coords(), y.coords());
        sum += t.weight * kd.partial(t.index, beta);
    }
    return sum;
}

double pair_bilinear(const Functional& phi, const Functional& psi, const Kernel& kernel) {
    // Terms sharing an anchor point are consecutive in practice; one pair of
    // anchors needs a single kernel-derivative table.
    const auto& ta = phi.terms();
    const auto& tb = psi.terms();
    double sum = 0.0;
    for (std::size_t i = 0; i < ta.size();) {
        kernel.check_dim(ta[i].point.coords());
        std::size_t iend = i + 1;
        while (iend < ta.size() && ta[iend].point == ta[i].point) ++iend;
        for (std::size_t j = 0; j < tb.size();) {
            kernel.check_dim(tb[j].point.coords());
            std::size_t jend = j + 1;
            while (jend < tb.size() && tb[jend].point == tb[j].point) ++jend;
            const KernelPairDerivatives kd(kernel, ta[i].point.coords().data(), tb[j].point.coords().data());
            for (std::size_t a = i; a < iend; ++a)
                for (std::size_t b = j; b < jend; ++b)
                    sum += ta[a].weight * tb[b].weight * kd.partial(ta[a].index, tb[b].index);
            j = jend;
        }
        i = iend;
    }
    return sum;
}

}  // namespace lgp
