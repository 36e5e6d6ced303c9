#include "smoothtrim/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>

#include "smoothtrim/error.hpp"
#include "smoothtrim/quadrature.hpp"
#include "smoothtrim/rng.hpp"
#include "smoothtrim/special.hpp"

namespace smoothtrim {

namespace {

double parse_number(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw ParameterError("");
        return v;
    } catch (const std::exception&) {
        throw ParameterError(std::string("mixture: cannot parse ") + what + " '" + text + "'");
    }
}

}  // namespace

MixtureModel::MixtureModel(std::vector<MixtureComponent> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw ParameterError("mixture needs at least one component");
    double total = 0.0;
    for (const auto& c : components_) {
        if (!std::isfinite(c.weight) || !(c.weight > 0.0))
            throw ParameterError("mixture component weights must be positive");
        if (!std::isfinite(c.mean) || !std::isfinite(c.sd) || !(c.sd > 0.0))
            throw ParameterError("mixture component needs finite mean and positive sd");
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ParameterError("mixture component weights must sum to 1");
}

double MixtureModel::cdf(double x) const {
    double acc = 0.0;
    for (const auto& c : components_) acc += c.weight * normal_cdf((x - c.mean) / c.sd);
    return acc;
}

double MixtureModel::quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("mixture quantile level outside (0,1)");
    double mean_lo = components_.front().mean;
    double mean_hi = components_.front().mean;
    double sd_max = components_.front().sd;
    for (const auto& c : components_) {
        mean_lo = std::min(mean_lo, c.mean);
        mean_hi = std::max(mean_hi, c.mean);
        sd_max = std::max(sd_max, c.sd);
    }
    double lo = mean_lo - 12.0 * sd_max;
    double hi = mean_hi + 12.0 * sd_max;
    for (int i = 0; i < 64 && cdf(lo) > p; ++i) lo -= 12.0 * sd_max;
    for (int i = 0; i < 64 && cdf(hi) < p; ++i) hi += 12.0 * sd_max;
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 300; ++it) {
        x = 0.5 * (lo + hi);
        const double f = cdf(x) - p;
        if (std::abs(f) <= 1e-13) break;
        if (f < 0.0)
            lo = x;
        else
            hi = x;
        if (hi - lo <= 1e-15 * std::max(1.0, std::abs(x))) break;
    }
    return x;
}

SortedSample MixtureModel::sample(std::size_t n, std::uint64_t seed) const {
    if (n < 1) throw ParameterError("sample size must be at least 1");
    Rng rng(seed);
    std::vector<double> xs(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.next_uniform_co();
        std::size_t k = 0;
        double acc = components_[0].weight;
        while (u >= acc && k + 1 < components_.size()) {
            ++k;
            acc += components_[k].weight;
        }
        xs[i] = components_[k].mean + components_[k].sd * rng.next_normal();
    }
    return SortedSample(std::move(xs));
}

MixtureModel MixtureModel::parse(std::string_view text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw ParameterError("empty mixture specification");

    std::vector<MixtureComponent> comps;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const std::size_t star = s.find("*N(", pos);
        if (star == std::string::npos)
            throw ParameterError("mixture term must look like w*N(mean,variance)");
        const double w = parse_number(s.substr(pos, star - pos), "weight");
        const std::size_t open = star + 3;
        const std::size_t comma = s.find(',', open);
        const std::size_t close = s.find(')', open);
        if (comma == std::string::npos || close == std::string::npos || comma > close)
            throw ParameterError("mixture term must look like w*N(mean,variance)");
        const double mean = parse_number(s.substr(open, comma - open), "mean");
        const double var = parse_number(s.substr(comma + 1, close - comma - 1), "variance");
        if (!(var > 0.0)) throw ParameterError("mixture component variance must be positive");
        comps.push_back({w, mean, std::sqrt(var)});
        pos = close + 1;
        if (pos < s.size()) {
            if (s[pos] != '+') throw ParameterError("mixture terms must be joined by '+'");
            ++pos;
            if (pos == s.size()) throw ParameterError("trailing '+' in mixture specification");
        }
    }
    return MixtureModel(std::move(comps));
}

std::string MixtureModel::to_string() const {
    std::string out;
    char buf[96];
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const auto& c = components_[i];
        std::snprintf(buf, sizeof buf, "%.12g*N(%.12g,%.12g)", c.weight, c.mean, c.sd * c.sd);
        if (i > 0) out += '+';
        out += buf;
    }
    return out;
}

QuantileFn quantile_fn(const MixtureModel& model) {
    QuantileFn fn;
    fn.value = [model](double u) { return model.quantile(u); };
    return fn;
}

double stm_true_mean(const QuantileFn& qf, const WeightSpec& spec) {
    spec.validate();
    const double lo = (spec.kind == WeightKind::StiglerTrapezoid) ? 0.5 * spec.alpha : spec.alpha;
    const double hi = 1.0 - lo;
    std::vector<double> bps = spec.breakpoints();
    bps.insert(bps.end(), qf.breakpoints.begin(), qf.breakpoints.end());
    const double raw = integrate(
        [&](double u) { return eval_weight(u, spec) * qf.value(u); }, lo, hi, bps);
    return raw / spec.weight_integral();
}

double stm_true_mean(const MixtureModel& model, const WeightSpec& spec) {
    return stm_true_mean(quantile_fn(model), spec);
}

}  // namespace smoothtrim
