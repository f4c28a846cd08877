#pragma once

#include <map>
#include <string>
#include <vector>

#include "mixedp/fucik.hpp"
#include "mixedp/params.hpp"
#include "mixedp/shape.hpp"

namespace mixedp {

// Flat "key = value" text with dotted sections; '#' starts a comment.
using ConfigMap = std::map<std::string, std::string>;

// Throws std::runtime_error with a single diagnostic on any malformed line.
ConfigMap parse_config_text(const std::string& text);
ConfigMap parse_config_file(const std::string& path);

// Applies one "key=value" override.
void apply_override(ConfigMap& map, const std::string& assignment);

std::string serialize_config(const ConfigMap& map);

// Fully resolved run configuration. Unknown keys are rejected.
struct RunConfig {
    OperatorParams params;
    ShapeSpec shape;
    SolveOptions solver;
    PathOptions path;

    double mu_frac = -1.0;  // when >= 0, mu = mu_frac * mu_max(theta)
    bool center_origin = true;  // translate the shape centroid to 0 when mu > 0

    std::vector<double> d_grid{0.0, 0.5, 1.0, 2.0, 5.0, 10.0};
    std::vector<double> d_lambda1_multiples;  // appended as multiples of lambda1

    double fk_volume = M_PI;
    int fk_resolution = 48;

    double hks_radius = 1.0;
    std::vector<double> hks_separations{2.6, 3.2, 4.8};
    int hks_resolution = 48;

    int hardy_trials = 100;
    double hardy_tol_rel = 1e-2;

    int check_picone_trials = 1000;
    int check_sigma_trials = 50;
    int check_pathlemma_trials = 10000;
    int check_grad_fields = 20;

    std::uint64_t seed = 42;
    int threads = 1;

    static RunConfig defaults();
    static RunConfig from_map(const ConfigMap& map);
    ConfigMap to_map() const;

    // Validates everything except mu admissibility (which needs constants).
    void validate() const;
};

}  // namespace mixedp
