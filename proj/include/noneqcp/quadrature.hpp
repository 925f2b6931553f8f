#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration. The rule itself comes
// from Boost.Math; the driver keeps a priority queue of subintervals keyed by
// error, bisects the worst one, and stops on a tolerance or interval budget.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "noneqcp/errors.hpp"

namespace noneqcp {

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    std::size_t max_intervals = 4000;
    bool throw_on_failure = true;
};

template <class T>
struct QuadResult {
    T value{};
    double error = 0.0;
    std::size_t intervals = 0;
    bool converged = true;
};

namespace detail {

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const std::complex<double>& z) { return std::abs(z); }

template <class T>
struct Panel {
    double a;
    double b;
    T value;
    double error;
    std::size_t seq;
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b, std::size_t seq) {
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& xk = kronrod::abscissa();
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();

    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    T fv[15];
    fv[0] = f(c);
    for (std::size_t i = 1; i < xk.size(); ++i) {
        fv[2 * i - 1] = f(c - h * xk[i]);
        fv[2 * i] = f(c + h * xk[i]);
    }

    T rk = fv[0] * wk[0];
    T rg = fv[0] * wg[0];
    double resabs = magnitude(fv[0]) * wk[0];
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const T pair = fv[2 * i - 1] + fv[2 * i];
        rk += pair * wk[i];
        resabs += (magnitude(fv[2 * i - 1]) + magnitude(fv[2 * i])) * wk[i];
        if (i % 2 == 0) rg += pair * wg[i / 2];
    }
    const T mean = rk * 0.5;
    double resasc = magnitude(fv[0] - mean) * wk[0];
    for (std::size_t i = 1; i < xk.size(); ++i)
        resasc += (magnitude(fv[2 * i - 1] - mean) + magnitude(fv[2 * i] - mean)) * wk[i];

    double err = magnitude(rk - rg) * std::abs(h);
    resabs *= std::abs(h);
    resasc *= std::abs(h);
    // QUADPACK error scaling.
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);

    return Panel<T>{a, b, rk * h, err, seq};
}

}  // namespace detail

// Integrate f over the consecutive pieces [p0,p1], [p1,p2], ... of `points`.
template <class F>
auto integrate(F&& f, const std::vector<double>& points, const QuadOptions& opt = {})
    -> QuadResult<decltype(f(0.0))> {
    using T = decltype(f(0.0));
    using P = detail::Panel<T>;
    auto worse = [](const P& x, const P& y) {
        if (x.error != y.error) return x.error < y.error;
        return x.seq > y.seq;
    };
    std::priority_queue<P, std::vector<P>, decltype(worse)> queue(worse);

    std::size_t seq = 0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (points[i + 1] == points[i]) continue;
        queue.push(detail::gk15<T>(f, points[i], points[i + 1], seq++));
    }

    auto totals = [&]() {
        std::vector<P> all;
        auto copy = queue;
        while (!copy.empty()) {
            all.push_back(copy.top());
            copy.pop();
        }
        std::sort(all.begin(), all.end(), [](const P& x, const P& y) { return x.a < y.a; });
        T v{};
        double e = 0.0;
        for (const auto& p : all) {
            v += p.value;
            e += p.error;
        }
        return std::pair<T, double>(v, e);
    };

    T value{};
    double error = 0.0;
    {
        auto copy = queue;
        while (!copy.empty()) {
            value += copy.top().value;
            error += copy.top().error;
            copy.pop();
        }
    }

    auto target = [&](const T& v) { return std::max(opt.abs_tol, opt.rel_tol * detail::magnitude(v)); };

    while (!queue.empty() && error > target(value) && queue.size() < opt.max_intervals) {
        P worst = queue.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) break;
        queue.pop();
        P left = detail::gk15<T>(f, worst.a, mid, seq++);
        P right = detail::gk15<T>(f, mid, worst.b, seq++);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
    }

    QuadResult<T> out;
    auto [v, e] = totals();
    out.value = v;
    out.error = e;
    out.intervals = queue.size();
    out.converged = e <= 10.0 * target(v) || e == 0.0;
    if (!out.converged && opt.throw_on_failure) {
        std::ostringstream msg;
        msg << "quadrature did not converge on [" << points.front() << ", " << points.back() << "]: estimated error "
            << e << " against target " << target(v) << " after " << queue.size() << " subintervals";
        const double mag = detail::magnitude(v);
        throw ConvergenceError(msg.str(), mag, mag > 0 ? e / mag : e);
    }
    return out;
}

template <class F>
auto integrate(F&& f, double a, double b, const QuadOptions& opt = {}) {
    return integrate(std::forward<F>(f), std::vector<double>{a, b}, opt);
}

// Integral over [a, inf) through x = a + t/(1-t).
template <class F>
auto integrate_to_infinity(F&& f, double a, const QuadOptions& opt = {}) {
    using T = decltype(f(0.0));
    auto g = [&](double t) -> T {
        if (t >= 1.0) return T{};
        const double s = 1.0 - t;
        const T v = f(a + t / s);
        return v / (s * s);
    };
    return integrate(g, 0.0, 1.0, opt);
}

}  // namespace noneqcp
