#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace trp {

// Realized sequence of per-period price relatives x(t) = [x1(t), x2(t)],
// the ratio of consecutive closing prices. All entries strictly positive.
class PriceRelativeSeries {
public:
    PriceRelativeSeries() = default;

    void append(double x1, double x2);
    void append(std::string label, double x1, double x2);
    void clear();

    std::size_t size() const { return x1_.size(); }
    bool empty() const { return x1_.empty(); }

    double x1(std::size_t t) const { return x1_[t]; }
    double x2(std::size_t t) const { return x2_[t]; }

    bool has_labels() const { return !labels_.empty(); }
    const std::string& label(std::size_t t) const { return labels_[t]; }

    // Copy of periods [begin, end).
    PriceRelativeSeries slice(std::size_t begin, std::size_t end) const;

private:
    std::vector<double> x1_;
    std::vector<double> x2_;
    std::vector<std::string> labels_;  // empty when unlabeled
};

// Per-period log-space law of the two assets: ln x_i(t) ~ N(mu_i, var_i).
struct LogNormalParams {
    double mu1 = 0.0;
    double mu2 = 0.0;
    double var1 = 0.0;
    double var2 = 0.0;

    LogNormalParams(double mu1_, double mu2_, double var1_, double var2_);
};

// Law of the log-ratio walk z(t) = ln(x2(t)/x1(t)).
struct ReducedParams {
    double mu = 0.0;   // mu2 - mu1
    double var = 0.0;  // var1 + var2
};

ReducedParams reduce(const LogNormalParams& params);

// n i.i.d. draws from the log-normal market; identical seeds give identical
// series.
PriceRelativeSeries sample_market(const LogNormalParams& params, std::size_t n,
                                  std::uint64_t seed);

// Converts two aligned closing-price histories into price relatives
// (length len - 1). Requires equal lengths >= 2 and positive prices.
PriceRelativeSeries from_prices(const std::vector<double>& closes1,
                                const std::vector<double>& closes2);

enum class CsvMode { relatives, prices };

// CSV with required header `date,x1,x2` (relatives) or `date,close1,close2`
// (prices); one row per period in chronological order.
PriceRelativeSeries read_series_csv(std::istream& in, CsvMode mode);
PriceRelativeSeries read_series_csv_file(const std::string& path, CsvMode mode);

void write_series_csv(std::ostream& out, const PriceRelativeSeries& series);
void write_series_csv_file(const std::string& path, const PriceRelativeSeries& series);

}  // namespace trp
