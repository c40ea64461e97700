/*******************************************************************************
 * Copyright 2026 The cdfdamage Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *******************************************************************************/
#include "cdfdamage/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "cdfdamage/errors.hpp"

namespace cdfdamage {

namespace {

const double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
const double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for xgk[1], xgk[3], xgk[5], xgk[7].
const double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
        0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel &o) const { return error < o.error; }
};

Panel gk15(const Integrand &f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = fc * wgk[7];
    double gauss = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double s = f(c - dx) + f(c + dx);
        kronrod += wgk[j] * s;
        if (j % 2 == 1) gauss += wg[j / 2] * s;
    }
    kronrod *= h;
    gauss *= h;
    if (!std::isfinite(kronrod)) throw DomainError("quadrature: non-finite integrand value");
    return {a, b, kronrod, std::fabs(kronrod - gauss)};
}

} // namespace

QuadratureResult integrate(const Integrand &f, double a, double b, double rel_tol,
        double abs_tol, int max_intervals) {
    QuadratureResult r;
    if (a == b) {
        r.converged = true;
        return r;
    }
    std::priority_queue<Panel> heap;
    Panel first = gk15(f, a, b);
    heap.push(first);
    double total = first.value;
    double err = first.error;
    int count = 1;
    while (err > std::max(abs_tol, rel_tol * std::fabs(total)) && count < max_intervals) {
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // cannot split further; keep the panel and stop
            heap.push(worst);
            break;
        }
        Panel left = gk15(f, worst.a, mid);
        Panel right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // re-sum for a clean total
    total = 0.0;
    err = 0.0;
    std::vector<Panel> panels;
    panels.reserve(heap.size());
    while (!heap.empty()) {
        panels.push_back(heap.top());
        heap.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel &p, const Panel &q) { return p.a < q.a; });
    for (const Panel &p : panels) {
        total += p.value;
        err += p.error;
    }
    r.value = total;
    r.error = err;
    r.intervals = count;
    r.converged = err <= std::max(abs_tol, rel_tol * std::fabs(total)) * 1.0000001;
    return r;
}

QuadratureResult integrate_tail(const Integrand &f, double a, double rel_tol, double abs_tol,
        int max_intervals) {
    if (!(a > 0.0)) throw DomainError("integrate_tail requires a > 0");
    auto g = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double x = a / u;
        const double v = f(x) * a / (u * u);
        return std::isfinite(v) ? v : 0.0;
    };
    return integrate(g, 0.0, 1.0, rel_tol, abs_tol, max_intervals);
}

QuadratureResult integrate_half_line(const Integrand &f, double split, double rel_tol,
        double abs_tol, int max_intervals) {
    QuadratureResult head = integrate(f, 0.0, split, rel_tol, abs_tol, max_intervals);
    QuadratureResult tail = integrate_tail(f, split, rel_tol, abs_tol, max_intervals);
    QuadratureResult r;
    r.value = head.value + tail.value;
    r.error = head.error + tail.error;
    r.intervals = head.intervals + tail.intervals;
    r.converged = r.error <= std::max(abs_tol, rel_tol * std::fabs(r.value)) * 1.0000001
            || (head.converged && tail.converged);
    return r;
}

} // namespace cdfdamage
