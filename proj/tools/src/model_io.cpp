#include "lgp/cli/model_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lgp/cli/config.hpp"

namespace lgp::cli {

namespace {

using nlohmann::json;

json to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vector vector_from(const json& j) {
    const auto values = j.get<std::vector<double>>();
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json functional_to_json(const Functional& f) {
    json terms = json::array();
    for (const auto& t : f.terms()) {
        json idx = json::array();
        for (int s = 0; s < t.index.order(); ++s) idx.push_back(t.index.coord(s));
        terms.push_back({{"w", t.weight}, {"p", to_json(t.point.coords())}, {"i", idx}});
    }
    return {{"terms", terms}};
}

Functional functional_from(const json& j) {
    Functional f;
    for (const auto& t : j.at("terms")) {
        const auto idx = t.at("i").get<std::vector<int>>();
        MultiIndex alpha;
        if (idx.size() == 1) {
            alpha = MultiIndex::first(idx[0]);
        } else if (idx.size() == 2) {
            alpha = MultiIndex::second(idx[0], idx[1]);
        } else if (!idx.empty()) {
            throw ConfigError("model file: derivative order above two");
        }
        f.add(t.at("w").get<double>(), PhasePoint::from_coords(vector_from(t.at("p"))), alpha);
    }
    return f;
}

}  // namespace

std::string serialize_model(const PosteriorModel& model, const std::string& metadata_config) {
    const ConstraintSet& c = model.constraints();
    const GramOptions& o = model.gram().options();
    json constraints = json::array();
    for (const auto& f : c.functionals) constraints.push_back(functional_to_json(f));
    json doc = {
        {"format", "lgp-model"},
        {"version", kModelFormatVersion},
        {"kind", to_string(c.kind)},
        {"half_dim", c.half_dim},
        {"kernel",
         {{"family", "squared-exponential"}, {"lengthscale", model.kernel().lengthscale()}, {"dim", model.kernel().dim()}}},
        {"gram",
         {{"jitter", o.jitter},
          {"pinv_cutoff", o.pinv_cutoff},
          {"consistency_tol", o.consistency_tol},
          {"factorization_fallback", o.factorization_fallback}}},
        {"base", to_json(c.base.coords())},
        {"momentum", to_json(c.momentum)},
        {"value", c.value},
        {"num_data", c.num_data},
        {"constraints", constraints},
        {"rhs", to_json(c.rhs)},
        {"weights", to_json(model.weights())},
        {"warnings", c.warnings},
        {"metadata", {{"config", metadata_config}}},
    };
    return doc.dump(1);
}

PosteriorModel deserialize_model(const std::string& text, unsigned threads) {
    try {
        const json doc = json::parse(text);
        if (doc.at("format").get<std::string>() != "lgp-model") throw ConfigError("model file: wrong format tag");
        const int version = doc.at("version").get<int>();
        if (version != kModelFormatVersion)
            throw ConfigError("model file: unsupported version " + std::to_string(version));
        if (doc.at("kernel").at("family").get<std::string>() != "squared-exponential")
            throw ConfigError("model file: unknown kernel family");

        ConstraintSet c;
        c.kind = model_kind_from_string(doc.at("kind").get<std::string>());
        c.half_dim = doc.at("half_dim").get<int>();
        c.num_data = doc.at("num_data").get<int>();
        c.base = PhasePoint::from_coords(vector_from(doc.at("base")));
        c.momentum = vector_from(doc.at("momentum"));
        c.value = doc.at("value").get<double>();
        for (const auto& f : doc.at("constraints")) c.functionals.push_back(functional_from(f));
        c.rhs = vector_from(doc.at("rhs"));
        c.warnings = doc.at("warnings").get<std::vector<std::string>>();
        if (c.rhs.size() != static_cast<Eigen::Index>(c.size()))
            throw ConfigError("model file: rhs and constraint counts differ");

        const Kernel kernel = Kernel::squared_exponential(doc.at("kernel").at("dim").get<int>(),
                                                          doc.at("kernel").at("lengthscale").get<double>());
        GramOptions o;
        const json& g = doc.at("gram");
        o.jitter = g.at("jitter").get<double>();
        o.pinv_cutoff = g.at("pinv_cutoff").get<double>();
        o.consistency_tol = g.at("consistency_tol").get<double>();
        o.factorization_fallback = g.at("factorization_fallback").get<bool>();
        o.threads = threads;

        auto constraints = std::make_shared<const ConstraintSet>(std::move(c));
        auto gram = std::make_shared<const GramSystem>(assemble_theta(*constraints, kernel, o));
        return {gram, constraints, vector_from(doc.at("weights"))};
    } catch (const json::exception& e) {
        throw ConfigError(std::string("model file: ") + e.what());
    } catch (const DimensionError& e) {
        throw ConfigError(std::string("model file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("model file: ") + e.what());
    }
}

void save_model(const PosteriorModel& model, const std::string& path, const std::string& metadata_config) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write model file '" + path + "'");
    out << serialize_model(model, metadata_config) << "\n";
    if (!out) throw ConfigError("failed writing model file '" + path + "'");
}

PosteriorModel load_model(const std::string& path, unsigned threads) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read model file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return deserialize_model(buf.str(), threads);
}

}  // namespace lgp::cli
