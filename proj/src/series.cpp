// Copyright 2026 The lpseries Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lpseries/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "lpseries/io.hpp"
#include "lpseries/parallel.hpp"

namespace lpseries {

namespace {

double parse_number(std::string_view text, std::string_view what)
{
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        throw std::invalid_argument("cannot parse " + std::string(what) + " '" +
                                    std::string(text) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep)
{
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return parts;
}

// Whitespace/comma separated numeric rows, '#' comments and blank lines
// skipped.
std::vector<std::vector<double>> read_numeric_rows(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open coefficient file '" + path + "'");
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        std::vector<double> row;
        std::string token;
        while (fields >> token) {
            try {
                row.push_back(parse_number(token, "number"));
            } catch (const std::invalid_argument& e) {
                throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                            ": " + e.what());
            }
        }
        if (!row.empty())
            rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

CoefficientSequence CoefficientSequence::power_law(double a, double alpha)
{
    if (!(a > 0.0) || !(alpha > 0.5) || !std::isfinite(a) || !std::isfinite(alpha))
        throw std::invalid_argument(
            "power law needs a > 0 and alpha > 1/2 for square summability");
    CoefficientSequence c;
    c.kind_ = Kind::power_law;
    c.a_ = a;
    c.alpha_ = alpha;
    return c;
}

CoefficientSequence CoefficientSequence::inverse_zero(int d, double scale,
                                                      std::size_t capacity)
{
    if (!(scale > 0.0) || !std::isfinite(scale))
        throw std::invalid_argument("inverse-zero scale must be positive");
    CoefficientSequence c;
    c.kind_ = Kind::inverse_zero;
    c.d_ = d;
    c.factor_ = scale;
    c.zeros_ = std::make_shared<const ZeroTable>(
        bessel_zeros(BesselOrder::from_dimension(d), capacity));
    return c;
}

CoefficientSequence CoefficientSequence::sparse(std::vector<std::size_t> indices,
                                                std::vector<double> values)
{
    if (indices.size() != values.size())
        throw std::invalid_argument("sparse sequence: index/value count mismatch");
    for (std::size_t k = 0; k < indices.size(); ++k) {
        if (indices[k] < 1 || (k > 0 && indices[k] <= indices[k - 1]))
            throw std::invalid_argument(
                "sparse sequence: indices must be >= 1 and strictly increasing");
        if (!(values[k] > 0.0) || !std::isfinite(values[k]))
            throw std::invalid_argument("sparse sequence: values must be positive");
    }
    CoefficientSequence c;
    c.kind_ = Kind::sparse;
    c.indices_ = std::move(indices);
    c.values_ = std::move(values);
    return c;
}

CoefficientSequence CoefficientSequence::explicit_list(std::vector<double> values)
{
    for (double v : values)
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument(
                "explicit sequence: values must be finite and nonnegative");
    CoefficientSequence c;
    c.kind_ = Kind::explicit_list;
    c.values_ = std::move(values);
    return c;
}

CoefficientSequence CoefficientSequence::parse(std::string_view spec)
{
    const auto parts = split(spec, ':');
    const std::string_view head = parts.front();
    if (head == "powerlaw") {
        if (parts.size() != 3)
            throw std::invalid_argument("expected powerlaw:a:alpha, got '" +
                                        std::string(spec) + "'");
        return power_law(parse_number(parts[1], "power-law amplitude"),
                         parse_number(parts[2], "power-law exponent"));
    }
    if (head == "invzero") {
        if (parts.size() > 3)
            throw std::invalid_argument("expected invzero[:d[:scale]], got '" +
                                        std::string(spec) + "'");
        const int d = parts.size() > 1
                          ? static_cast<int>(parse_number(parts[1], "dimension"))
                          : 2;
        const double scale = parts.size() > 2 ? parse_number(parts[2], "scale")
                                              : std::numbers::sqrt2;
        return inverse_zero(d, scale);
    }
    if (head == "sparse" || head == "explicit") {
        if (parts.size() < 2 || parts[1].empty())
            throw std::invalid_argument("expected " + std::string(head) +
                                        ":FILE, got '" + std::string(spec) + "'");
        // File names may themselves contain ':'.
        const std::string path(spec.substr(head.size() + 1));
        const auto rows = read_numeric_rows(path);
        CoefficientSequence c = [&] {
            if (head == "explicit") {
                std::vector<double> values;
                for (const auto& row : rows)
                    values.insert(values.end(), row.begin(), row.end());
                return explicit_list(std::move(values));
            }
            std::vector<std::size_t> indices;
            std::vector<double> values;
            for (const auto& row : rows) {
                if (row.size() != 2 || !(row[0] >= 1.0) ||
                    row[0] != std::floor(row[0]))
                    throw std::invalid_argument(path +
                                                ": sparse rows must be 'index value'");
                indices.push_back(static_cast<std::size_t>(row[0]));
                values.push_back(row[1]);
            }
            return sparse(std::move(indices), std::move(values));
        }();
        c.source_ = path;
        return c;
    }
    throw std::invalid_argument("unknown sequence spec '" + std::string(spec) + "'");
}

double CoefficientSequence::operator()(std::size_t n) const
{
    if (n < 1)
        throw std::out_of_range("coefficient indices start at 1");
    switch (kind_) {
    case Kind::power_law:
        return a_ * std::pow(static_cast<double>(n), -alpha_);
    case Kind::inverse_zero:
        if (n > zeros_->size())
            throw std::out_of_range("inverse-zero sequence tabulated to n = " +
                                    std::to_string(zeros_->size()));
        return factor_ / zeros_->zero(n);
    case Kind::sparse: {
        const auto it = std::lower_bound(indices_.begin(), indices_.end(), n);
        if (it == indices_.end() || *it != n)
            return 0.0;
        return factor_ * values_[static_cast<std::size_t>(it - indices_.begin())];
    }
    case Kind::explicit_list:
        return n <= values_.size() ? factor_ * values_[n - 1] : 0.0;
    }
    return 0.0;
}

std::vector<double> CoefficientSequence::first(std::size_t count) const
{
    std::vector<double> out(count);
    for (std::size_t n = 1; n <= count; ++n)
        out[n - 1] = (*this)(n);
    return out;
}

CoefficientSequence CoefficientSequence::scaled(double factor) const
{
    if (!(factor > 0.0) || !std::isfinite(factor))
        throw std::invalid_argument("scale factor must be positive");
    CoefficientSequence c = *this;
    if (kind_ == Kind::power_law)
        c.a_ *= factor;
    else
        c.factor_ *= factor;
    return c;
}

std::string CoefficientSequence::describe() const
{
    std::string out;
    switch (kind_) {
    case Kind::power_law:
        return "powerlaw:" + format_double(a_) + ":" + format_double(alpha_);
    case Kind::inverse_zero:
        return "invzero:" + std::to_string(d_) + ":" + format_double(factor_);
    case Kind::sparse:
        if (!source_.empty()) {
            out = "sparse:" + source_;
        } else {
            out = "sparse:{";
            for (std::size_t k = 0; k < indices_.size(); ++k)
                out += (k ? "," : "") + std::to_string(indices_[k]) + "=" +
                       format_double(values_[k]);
            out += "}";
        }
        break;
    case Kind::explicit_list:
        out = source_.empty() ? "explicit:[" + std::to_string(values_.size()) +
                                    " values]"
                              : "explicit:" + source_;
        break;
    }
    if (factor_ != 1.0)
        out += "*" + format_double(factor_);
    return out;
}

//---------------------------------------------------------------------------//

SeriesSampler::SeriesSampler(const CoefficientSequence& c,
                             const RadialBasis& basis, std::size_t truncation,
                             const QuadratureGrid& grid)
    : truncation_(truncation), nodes_(grid.size())
{
    if (truncation > basis.size())
        throw std::out_of_range("truncation " + std::to_string(truncation) +
                                " exceeds basis size " +
                                std::to_string(basis.size()));
    if (truncation > 0)
        require_resolution(grid, basis.zero(truncation));
    table_.assign(truncation * nodes_, 0.0);
    parallel_for(truncation, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
            const double coefficient = c(k + 1);
            if (coefficient == 0.0)
                continue;
            const std::vector<double> mode = sample_mode(basis, k + 1, grid);
            for (std::size_t i = 0; i < nodes_; ++i)
                table_[k * nodes_ + i] = coefficient * mode[i];
        }
    });
    // Full 4-node blocks, each holding modes 1..N contiguously.
    const std::size_t blocks = nodes_ / block_nodes;
    blocked_.resize(blocks * block_nodes * truncation);
    for (std::size_t blk = 0; blk < blocks; ++blk)
        for (std::size_t k = 0; k < truncation; ++k)
            for (std::size_t ii = 0; ii < block_nodes; ++ii)
                blocked_[(blk * truncation + k) * block_nodes + ii] =
                    table_[k * nodes_ + blk * block_nodes + ii];
}

void SeriesSampler::evaluate(std::span<const std::complex<double>> g,
                             std::vector<double>& re,
                             std::vector<double>& im) const
{
    if (g.size() < truncation_)
        throw std::invalid_argument("SeriesSampler: too few coefficients");
    re.assign(nodes_, 0.0);
    im.assign(nodes_, 0.0);
    double* out_re = re.data();
    double* out_im = im.data();
    for (std::size_t k = 0; k < truncation_; ++k) {
        const double a = g[k].real();
        const double b = g[k].imag();
        const double* row = table_.data() + k * nodes_;
        for (std::size_t i = 0; i < nodes_; ++i) {
            out_re[i] += a * row[i];
            out_im[i] += b * row[i];
        }
    }
}

namespace {

// Two doubles in one SSE2 register (GCC/Clang vector extension).
using pair = double __attribute__((vector_size(16)));

// |F|^p contribution of one node, matching field_power_integral.
inline double node_power(double w, double x, double y, double p, double half)
{
    const double m2 = x * x + y * y;
    return w * (p == 2.0 ? m2 : p == 4.0 ? m2 * m2 : std::pow(m2, half));
}

}  // namespace

std::vector<double> SeriesSampler::power_integrals(const QuadratureGrid& grid,
                                                   std::uint64_t master_seed,
                                                   std::uint64_t first,
                                                   std::size_t count,
                                                   double p) const
{
    if (grid.size() != nodes_)
        throw std::invalid_argument("SeriesSampler: grid does not match the table");
    // Seeds are processed in batches; within a batch a 2-seed x 4-node block
    // of the field is accumulated in registers over all modes, so the mode
    // table streams from memory once per batch.  Each node still sums modes
    // in increasing order, which keeps results bitwise equal to evaluate().
    constexpr std::size_t batch = 32;
    constexpr std::size_t seeds_per_block = 2;
    constexpr std::size_t nodes_per_block = block_nodes;
    const std::size_t modes = truncation_;
    const auto w = grid.weights();
    const double half = 0.5 * p;
    std::vector<double> out(count, 0.0);
    const std::size_t batches = (count + batch - 1) / batch;
    parallel_for(batches, [&](std::size_t begin, std::size_t end) {
        std::vector<double> a(batch * modes);
        std::vector<double> b(batch * modes);
        for (std::size_t blk = begin; blk < end; ++blk) {
            const std::size_t s0 = blk * batch;
            const std::size_t width = std::min(batch, count - s0);
            std::fill(a.begin(), a.end(), 0.0);
            std::fill(b.begin(), b.end(), 0.0);
            for (std::size_t j = 0; j < width; ++j) {
                const RandomStream stream(master_seed, first + s0 + j);
                for (std::size_t k = 0; k < modes; ++k) {
                    const std::complex<double> g = stream.complex_gaussian(k);
                    a[j * modes + k] = g.real();
                    b[j * modes + k] = g.imag();
                }
            }
            std::size_t i0 = 0;
            for (; i0 + nodes_per_block <= nodes_; i0 += nodes_per_block) {
                const double* blocked = blocked_.data() + i0 * modes;
                for (std::size_t j0 = 0; j0 < width; j0 += seeds_per_block) {
                    const double* a0 = a.data() + j0 * modes;
                    const double* a1 = a0 + modes;
                    const double* b0 = b.data() + j0 * modes;
                    const double* b1 = b0 + modes;
                    pair re00{}, re01{}, re10{}, re11{};
                    pair im00{}, im01{}, im10{}, im11{};
                    for (std::size_t k = 0; k < modes; ++k) {
                        const double* row = blocked + 4 * k;
                        pair lo;
                        pair hi;
                        std::memcpy(&lo, row, sizeof lo);
                        std::memcpy(&hi, row + 2, sizeof hi);
                        const pair x0 = {a0[k], a0[k]};
                        const pair x1 = {a1[k], a1[k]};
                        const pair y0 = {b0[k], b0[k]};
                        const pair y1 = {b1[k], b1[k]};
                        re00 += x0 * lo;
                        re01 += x0 * hi;
                        re10 += x1 * lo;
                        re11 += x1 * hi;
                        im00 += y0 * lo;
                        im01 += y0 * hi;
                        im10 += y1 * lo;
                        im11 += y1 * hi;
                    }
                    const pair re_blocks[2][2] = {{re00, re01}, {re10, re11}};
                    const pair im_blocks[2][2] = {{im00, im01}, {im10, im11}};
                    for (std::size_t jj = 0; jj < seeds_per_block && j0 + jj < width;
                         ++jj) {
                        double sum = out[s0 + j0 + jj];
                        for (std::size_t ii = 0; ii < nodes_per_block; ++ii)
                            sum += node_power(w[i0 + ii], re_blocks[jj][ii / 2][ii % 2],
                                              im_blocks[jj][ii / 2][ii % 2], p, half);
                        out[s0 + j0 + jj] = sum;
                    }
                }
            }
            for (; i0 < nodes_; ++i0) {
                for (std::size_t j = 0; j < width; ++j) {
                    double x = 0.0;
                    double y = 0.0;
                    for (std::size_t k = 0; k < modes; ++k) {
                        x += a[j * modes + k] * table_[k * nodes_ + i0];
                        y += b[j * modes + k] * table_[k * nodes_ + i0];
                    }
                    out[s0 + j] += node_power(w[i0], x, y, p, half);
                }
            }
        }
    });
    return out;
}

SeriesDraw SeriesSampler::draw(const RandomStream& stream) const
{
    SeriesDraw result;
    result.master_seed = stream.master_seed();
    result.stream_index = stream.stream_index();
    result.truncation = truncation_;
    result.g = sample_complex_gaussian(stream, truncation_);
    evaluate(result.g, result.field_re, result.field_im);
    return result;
}

SeriesDraw draw_series(const CoefficientSequence& c, const RadialBasis& basis,
                       std::size_t truncation, const QuadratureGrid& grid,
                       std::uint64_t master_seed, std::uint64_t stream_index)
{
    return SeriesSampler(c, basis, truncation, grid)
        .draw(RandomStream(master_seed, stream_index));
}

double field_power_integral(const SeriesDraw& draw, const QuadratureGrid& grid,
                            double p)
{
    if (draw.field_re.size() != grid.size())
        throw std::invalid_argument("field_power_integral: draw/grid mismatch");
    const auto w = grid.weights();
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i)
        sum += node_power(w[i], draw.field_re[i], draw.field_im[i], p, 0.5 * p);
    return sum;
}

MonteCarloEstimate summarize(std::span<const double> samples)
{
    MonteCarloEstimate est;
    est.samples = samples.size();
    if (samples.empty())
        return est;
    double sum = 0.0;
    for (double v : samples)
        sum += v;
    est.mean = sum / static_cast<double>(samples.size());
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double v : samples)
            ss += (v - est.mean) * (v - est.mean);
        const auto n = static_cast<double>(samples.size());
        est.standard_error = std::sqrt(ss / (n - 1.0) / n);
    }
    return est;
}

namespace {

double analytic_increment(const CoefficientSequence& c, std::size_t m,
                          std::size_t n)
{
    double sum = 0.0;
    for (std::size_t k = m + 1; k <= n; ++k)
        sum += c(k) * c(k);
    return 2.0 * sum;
}

void check_increment_range(std::size_t m, std::size_t n)
{
    if (m > n)
        throw std::invalid_argument("l2_cauchy_increment: need M <= N");
}

}  // namespace

IncrementEstimate l2_cauchy_increment(const CoefficientSequence& c,
                                      const RadialBasis& basis, std::size_t m,
                                      std::size_t n, const QuadratureGrid& grid,
                                      std::size_t n_seeds,
                                      std::uint64_t master_seed)
{
    check_increment_range(m, n);
    IncrementEstimate result;
    result.analytic = analytic_increment(c, m, n);
    if (m == n) {
        result.estimate.samples = n_seeds;
        return result;
    }
    // Only modes M+1..N enter the difference.
    std::vector<double> tail(n);
    for (std::size_t k = m + 1; k <= n; ++k)
        tail[k - 1] = c(k);
    const SeriesSampler sampler(CoefficientSequence::explicit_list(tail), basis, n,
                                grid);
    result.estimate =
        summarize(sampler.power_integrals(grid, master_seed, 0, n_seeds, 2.0));
    return result;
}

IncrementEstimate l2_cauchy_increment(const CoefficientSequence& c,
                                      const ConstantModulusBasis& basis,
                                      std::size_t m, std::size_t n,
                                      std::size_t n_seeds,
                                      std::uint64_t master_seed)
{
    check_increment_range(m, n);
    IncrementEstimate result;
    result.analytic = analytic_increment(c, m, n) * basis.measure_mass();
    std::vector<double> energies(n_seeds);
    const std::vector<double> coefficients = c.first(n);
    parallel_for(n_seeds, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            const RandomStream stream(master_seed, s);
            double sum = 0.0;
            for (std::size_t k = m + 1; k <= n; ++k) {
                const double e = basis.abs_value(k) * coefficients[k - 1];
                sum += std::norm(stream.complex_gaussian(k - 1)) * e * e;
            }
            energies[s] = sum * basis.measure_mass();
        }
    });
    result.estimate = summarize(energies);
    return result;
}

double pointwise_sigma2(const CoefficientSequence& c, const RadialBasis& basis,
                        double r, std::size_t truncation)
{
    double sum = 0.0;
    for (std::size_t n = 1; n <= truncation; ++n) {
        const double coefficient = c(n);
        if (coefficient == 0.0)
            continue;
        const double e = eval_e(basis, n, r);
        sum += coefficient * coefficient * e * e;
    }
    return sum;
}

double pointwise_sigma2(const CoefficientSequence& c,
                        const ConstantModulusBasis& basis, double /*r*/,
                        std::size_t truncation)
{
    double sum = 0.0;
    for (std::size_t n = 1; n <= truncation; ++n) {
        const double e = c(n) * basis.abs_value(n);
        sum += e * e;
    }
    return sum;
}

std::vector<std::complex<double>> pointwise_samples(
    const CoefficientSequence& c, const RadialBasis& basis, double r,
    std::size_t truncation, std::size_t n_seeds, std::uint64_t master_seed)
{
    std::vector<double> weights(truncation);
    for (std::size_t n = 1; n <= truncation; ++n)
        weights[n - 1] = c(n) * eval_e(basis, n, r);
    std::vector<std::complex<double>> out(n_seeds);
    parallel_for(n_seeds, [&](std::size_t begin, std::size_t end) {
        for (std::size_t s = begin; s < end; ++s) {
            const RandomStream stream(master_seed, s);
            std::complex<double> sum = 0.0;
            for (std::size_t k = 0; k < truncation; ++k)
                sum += stream.complex_gaussian(k) * weights[k];
            out[s] = sum;
        }
    });
    return out;
}

void write_field_csv(const SeriesDraw& draw, const QuadratureGrid& grid,
                     std::ostream& out)
{
    if (draw.field_re.size() != grid.size())
        throw std::invalid_argument("write_field_csv: draw/grid mismatch");
    out << "r,re,im\n";
    const auto nodes = grid.nodes();
    for (std::size_t i = 0; i < nodes.size(); ++i)
        write_csv_row(out, {format_double(nodes[i]), format_double(draw.field_re[i]),
                            format_double(draw.field_im[i])});
}

}  // namespace lpseries
