#pragma once

#include <string>

#include "lgp/inference.hpp"

namespace lgp::cli {

/// Model files are JSON documents:
///
///   format       "lgp-model"
///   version      1
///   kind         "continuous" | "discrete"
///   half_dim     d
///   kernel       { family: "squared-exponential", lengthscale, dim }
///   gram         { jitter, pinv_cutoff, consistency_tol, factorization_fallback }
///   base, momentum, value     normalisation point, p_b, c_b
///   num_data     M
///   constraints  [ { terms: [ { w, p: [coords], i: [differentiated coords] } ] } ]
///   rhs, weights arrays of the same length as constraints
///   warnings     strings from constraint construction
///   metadata     free-form object (the producing configuration)
///
/// Doubles are written in shortest round-trip form, so a loaded model
/// reproduces the saved weights bit for bit. Theta is reassembled on load.
inline constexpr int kModelFormatVersion = 1;

void save_model(const PosteriorModel& model, const std::string& path, const std::string& metadata_config = {});

/// Throws ConfigError on unreadable or malformed files.
[[nodiscard]] PosteriorModel load_model(const std::string& path, unsigned threads = 0);

[[nodiscard]] std::string serialize_model(const PosteriorModel& model, const std::string& metadata_config = {});
[[nodiscard]] PosteriorModel deserialize_model(const std::string& text, unsigned threads = 0);

}  // namespace lgp::cli
