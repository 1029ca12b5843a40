// Copyright 2026 The darwinium Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "darwinium/nelder_mead.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace darwinium {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd &)> &f,
                             const Eigen::VectorXd &x0, const NelderMeadOptions &opt) {
    const Eigen::Index n = x0.size();
    NelderMeadResult res;
    if (n == 0) {
        res.x = x0;
        res.f = f(x0);
        res.evals = 1;
        res.converged = true;
        return res;
    }

    std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n + 1), x0);
    std::vector<double> fv(pts.size());
    int evals = 0;
    const auto eval = [&](const Eigen::VectorXd &x) {
        ++evals;
        return f(x);
    };
    fv[0] = eval(x0);
    for (Eigen::Index i = 0; i < n; ++i) {
        pts[static_cast<std::size_t>(i + 1)](i) += opt.initial_step;
        fv[static_cast<std::size_t>(i + 1)] = eval(pts[static_cast<std::size_t>(i + 1)]);
    }

    const double dn = static_cast<double>(n);
    const double expand = opt.adaptive ? 1.0 + 2.0 / dn : 2.0;
    const double contract = opt.adaptive ? 0.75 - 0.5 / dn : 0.5;
    const double shrink = opt.adaptive ? 1.0 - 1.0 / dn : 0.5;

    std::vector<std::size_t> order(pts.size());
    bool converged = false;
    while (evals < opt.max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second = order[order.size() - 2];

        double diam = 0.0;
        for (const auto &p : pts) {
            diam = std::max(diam, (p - pts[best]).cwiseAbs().maxCoeff());
        }
        if (fv[worst] - fv[best] <= opt.ftol && diam <= opt.xtol) {
            converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i != worst) {
                centroid += pts[i];
            }
        }
        centroid /= static_cast<double>(n);

        const Eigen::VectorXd xr = centroid + (centroid - pts[worst]);
        const double fr = eval(xr);
        if (fr < fv[best]) {
            const Eigen::VectorXd xe = centroid + expand * (centroid - pts[worst]);
            const double fe = eval(xe);
            if (fe < fr) {
                pts[worst] = xe;
                fv[worst] = fe;
            } else {
                pts[worst] = xr;
                fv[worst] = fr;
            }
            continue;
        }
        if (fr < fv[second]) {
            pts[worst] = xr;
            fv[worst] = fr;
            continue;
        }
        // Contraction, outside or inside depending on where xr landed.
        const bool outside = fr < fv[worst];
        const Eigen::VectorXd xc =
            outside ? Eigen::VectorXd(centroid + contract * (xr - centroid)) : Eigen::VectorXd(centroid + contract * (pts[worst] - centroid));
        const double fc = eval(xc);
        if (fc < (outside ? fr : fv[worst])) {
            pts[worst] = xc;
            fv[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i != best) {
                pts[i] = pts[best] + shrink * (pts[i] - pts[best]);
                fv[i] = eval(pts[i]);
            }
        }
    }

    const auto it = std::min_element(fv.begin(), fv.end());
    const auto k = static_cast<std::size_t>(it - fv.begin());
    res.x = pts[k];
    res.f = fv[k];
    res.evals = evals;
    res.converged = converged;
    return res;
}

}  // namespace darwinium
