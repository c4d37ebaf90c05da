// Builds one augmented hexagon in H^4, prints its half side-lengths and the
// residuals of the four Delambre-Gauss identities.
#include <cstdio>

#include "hexagauss/hexagon.hpp"

int main() {
    using namespace hexagauss;
    Rng rng = Rng::for_instance(2024, 0);
    AugmentedHexagonH4 h = random_augmented_hexagon_h4(rng);
    auto hl = half_lengths(h);
    for (int n = 0; n < 6; ++n) std::printf("delta_%d = %s\n", n + 1, to_string(hl[static_cast<std::size_t>(n)].values[0]).c_str());
    VerificationReport r = verify_hexagon(h);
    std::printf("epsilon = %+d\n", r.epsilon);
    for (const char* f : {"h4_1", "h4_2", "h4_3", "h4_4", "closure"}) std::printf("%-8s %.3e\n", f, r.get(f));
    return r.pass ? 0 : 1;
}
