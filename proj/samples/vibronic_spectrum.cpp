// Copyright 2026 The fcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Photoelectron spectrum of water: derive the circuit parameters, compute the
// Franck-Condon distribution from the vibrational ground state, and print the
// strongest lines and a coarse broadened profile.

#include <algorithm>
#include <cstdio>

#include "fcsim/fcsim.hpp"

int main() {
    using namespace fcsim;
    const MolecularTransition t = preset("h2o");
    const DoktorovParams p = doktorov_params(t);
    std::printf("eta = %.4f  theta = %.5f  alpha = (%.4f, %.4f)\n", p.eta, p.theta(), p.alpha[0], p.alpha[1]);

    const JointDistribution d = fcf_distribution(p, 0, 0, 15);
    std::printf("box mass %.6f, leakage %.2e\n", d.total(), d.leakage);

    SpectrumSeries s = spectrum(d, t.nu_post[0], t.nu_post[1], 300.0);
    std::sort(s.sticks.begin(), s.sticks.end(), [](const Stick& a, const Stick& b) { return a.weight > b.weight; });
    std::printf("\nstrongest lines\n  n' m'  term (cm^-1)  FCF\n");
    for (std::size_t i = 0; i < 8 && i < s.sticks.size(); ++i)
        std::printf("  %2d %2d  %11.1f  %.4f\n", s.sticks[i].n_prime, s.sticks[i].m_prime, s.sticks[i].term_value,
                    s.sticks[i].weight);

    std::printf("\nbroadened profile (300 cm^-1 FWHM, peak per 800 cm^-1 window)\n");
    const double peak = *std::max_element(s.intensity.begin(), s.intensity.end());
    const std::size_t window = 800;
    for (std::size_t i = 0; i < s.grid.size(); i += window) {
        const auto end = s.intensity.begin() + static_cast<std::ptrdiff_t>(std::min(i + window, s.intensity.size()));
        const double top = *std::max_element(s.intensity.begin() + static_cast<std::ptrdiff_t>(i), end);
        const int bar = static_cast<int>(60.0 * top / peak + 0.5);
        std::printf("%7.0f |%.*s\n", s.grid[i], bar, "############################################################");
    }
    return 0;
}
