#include "lgp/types.hpp"

#include <algorithm>
#include <cmath>

namespace lgp {

std::string to_string(ModelKind kind) {
    return kind == ModelKind::Continuous ? "continuous" : "discrete";
}

ModelKind model_kind_from_string(const std::string& name) {
    if (name == "continuous") return ModelKind::Continuous;
    if (name == "discrete") return ModelKind::Discrete;
    throw Error("unknown model kind '" + name + "'");
}

void require_finite(const Vector& v, const char* what) {
    if (!v.allFinite()) throw Error(std::string(what) + ": non-finite entry");
}

PhasePoint::PhasePoint(const Vector& first, const Vector& second) {
    if (first.size() != second.size() || first.size() == 0)
        throw DimensionError("PhasePoint: halves must have equal positive length");
    coords_.resize(first.size() + second.size());
    coords_ << first, second;
    require_finite(coords_, "PhasePoint");
}

PhasePoint PhasePoint::from_coords(const Vector& coords) {
    if (coords.size() == 0 || coords.size() % 2 != 0)
        throw DimensionError("PhasePoint: coordinate count must be even and positive");
    const auto d = coords.size() / 2;
    return {coords.head(d), coords.tail(d)};
}

MultiIndex MultiIndex::first(int i) {
    if (i < 0 || i > 127) throw std::invalid_argument("MultiIndex: coordinate out of range");
    MultiIndex m;
    m.order_ = 1;
    m.coords_[0] = static_cast<std::int8_t>(i);
    return m;
}

MultiIndex MultiIndex::second(int i, int j) {
    if (i < 0 || j < 0 || i > 127 || j > 127) throw std::invalid_argument("MultiIndex: coordinate out of range");
    MultiIndex m;
    m.order_ = 2;
    m.coords_[0] = static_cast<std::int8_t>(std::min(i, j));
    m.coords_[1] = static_cast<std::int8_t>(std::max(i, j));
    return m;
}

MultiIndex MultiIndex::from_orders(const std::vector<int>& orders) {
    std::vector<int> picked;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (orders[i] < 0) throw std::invalid_argument("MultiIndex: negative order");
        for (int k = 0; k < orders[i]; ++k) picked.push_back(static_cast<int>(i));
    }
    switch (picked.size()) {
        case 0: return zero();
        case 1: return first(picked[0]);
        case 2: return second(picked[0], picked[1]);
        default: throw std::invalid_argument("MultiIndex: total order exceeds 2");
    }
}

std::vector<int> MultiIndex::orders(int dim) const {
    std::vector<int> out(static_cast<std::size_t>(dim), 0);
    for (int s = 0; s < order_; ++s) {
        const int c = coords_[static_cast<std::size_t>(s)];
        if (c >= dim) throw DimensionError("MultiIndex: coordinate exceeds dimension");
        ++out[static_cast<std::size_t>(c)];
    }
    return out;
}

double LocalJet::partial(const MultiIndex& alpha) const {
    switch (alpha.order()) {
        case 0: return value;
        case 1: return gradient[alpha.coord(0)];
        default: return hessian(alpha.coord(0), alpha.coord(1));
    }
}

}  // namespace lgp
