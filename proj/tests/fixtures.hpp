#pragma once

#include <string>

#include "cbm/random.hpp"
#include "cbm/system_reliability.hpp"

namespace cbm::test {

inline ComponentParams table2_comp12(const std::string& name = "component1") {
    return {name, 0.00125, 1.5, 0.7, 0.3, 0.4, 1.0, 1.2, 0.2};
}

inline ComponentParams table2_comp34(const std::string& name = "component3") {
    return {name, 0.00127, 1.4, 0.8, 0.3, 0.5, 1.0, 1.22, 0.18};
}

inline SystemModel table2() {
    return {{table2_comp12("component1"), table2_comp12("component2"), table2_comp34("component3"),
             table2_comp34("component4")},
            2.5e-5};
}

inline SystemModel table3() {
    return {{{"component1", 0.00125, 1.5, 0.7, 0.3, 0.45, 1.0, 1.2, 0.22},
             {"component2", 0.00127, 1.4, 0.8, 0.3, 0.5, 1.0, 1.22, 0.18},
             {"component3", 0.0013, 1.2, 0.6, 0.25, 0.48, 1.0, 1.23, 0.15},
             {"component4", 0.00128, 1.45, 0.2, 0.25, 0.4, 1.0, 1.2, 0.2}},
            2.5e-5};
}

inline double draw(RandomStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

/// A valid component on a scale where failures take hours and shocks matter:
/// mean wear to h1 of roughly 1..20 hours, a handful of shocks per lifetime.
inline ComponentParams random_component(RandomStream& rng, int index) {
    ComponentParams c;
    c.name = "random" + std::to_string(index);
    c.h1 = draw(rng, 2.0, 6.0);
    c.alpha = draw(rng, 0.3, 2.0);
    c.beta = draw(rng, 0.5, 2.0);
    c.y_alpha = draw(rng, 0.3, 1.5);
    c.y_beta = draw(rng, 1.0, 4.0);
    c.w_mu = draw(rng, 0.9, 1.3);
    c.w_sigma = draw(rng, 0.1, 0.3);
    c.d = draw(rng, 1.3, 1.8);
    return c;
}

inline SystemModel random_system(RandomStream& rng, int components) {
    SystemModel m;
    for (int i = 0; i < components; ++i) m.components.push_back(random_component(rng, i));
    m.lambda = draw(rng, 0.02, 0.3);
    return m;
}

inline ThresholdVector scaled_thresholds(const SystemModel& m, double fraction) {
    ThresholdVector h;
    for (const auto& c : m.components) h.values.push_back(fraction * c.h1);
    return h;
}

}  // namespace cbm::test
