#include "trp/market.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "trp/rng.hpp"

namespace trp {

namespace {

void check_positive_ratio(double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::invalid_argument(std::string(name) + " must be strictly positive and finite");
    }
}

}  // namespace

void PriceRelativeSeries::append(double x1, double x2) {
    check_positive_ratio(x1, "x1");
    check_positive_ratio(x2, "x2");
    if (has_labels()) {
        throw std::invalid_argument("series has labels; append with a label");
    }
    x1_.push_back(x1);
    x2_.push_back(x2);
}

void PriceRelativeSeries::append(std::string label, double x1, double x2) {
    check_positive_ratio(x1, "x1");
    check_positive_ratio(x2, "x2");
    if (!has_labels() && !empty()) {
        throw std::invalid_argument("series is unlabeled; append without a label");
    }
    x1_.push_back(x1);
    x2_.push_back(x2);
    labels_.push_back(std::move(label));
}

void PriceRelativeSeries::clear() {
    x1_.clear();
    x2_.clear();
    labels_.clear();
}

PriceRelativeSeries PriceRelativeSeries::slice(std::size_t begin, std::size_t end) const {
    if (begin > end || end > size()) throw std::out_of_range("slice: bad range");
    PriceRelativeSeries out;
    for (std::size_t t = begin; t < end; ++t) {
        if (has_labels()) {
            out.append(label(t), x1(t), x2(t));
        } else {
            out.append(x1(t), x2(t));
        }
    }
    return out;
}

LogNormalParams::LogNormalParams(double mu1_, double mu2_, double var1_, double var2_)
    : mu1(mu1_), mu2(mu2_), var1(var1_), var2(var2_) {
    if (!std::isfinite(mu1) || !std::isfinite(mu2) || !std::isfinite(var1) ||
        !std::isfinite(var2)) {
        throw std::invalid_argument("log-normal parameters must be finite");
    }
    if (!(var1 > 0.0) || !(var2 > 0.0)) {
        throw std::invalid_argument("log-normal variances must be strictly positive");
    }
}

ReducedParams reduce(const LogNormalParams& params) {
    return ReducedParams{params.mu2 - params.mu1, params.var1 + params.var2};
}

PriceRelativeSeries sample_market(const LogNormalParams& params, std::size_t n,
                                  std::uint64_t seed) {
    PriceRelativeSeries series;
    Rng rng(seed);
    const double sd1 = std::sqrt(params.var1);
    const double sd2 = std::sqrt(params.var2);
    for (std::size_t t = 0; t < n; ++t) {
        double g1 = rng.next_normal(params.mu1, sd1);
        double g2 = rng.next_normal(params.mu2, sd2);
        series.append(std::exp(g1), std::exp(g2));
    }
    return series;
}

PriceRelativeSeries from_prices(const std::vector<double>& closes1,
                                const std::vector<double>& closes2) {
    if (closes1.size() != closes2.size()) {
        throw std::invalid_argument("from_prices: price histories differ in length");
    }
    if (closes1.size() < 2) {
        throw std::invalid_argument("from_prices: need at least two closing prices");
    }
    for (double p : closes1) check_positive_ratio(p, "close1");
    for (double p : closes2) check_positive_ratio(p, "close2");

    PriceRelativeSeries series;
    for (std::size_t t = 1; t < closes1.size(); ++t) {
        series.append(closes1[t] / closes1[t - 1], closes2[t] / closes2[t - 1]);
    }
    return series;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

double parse_number(const std::string& s, std::size_t line_no) {
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("csv: bad number '" + s + "' on line " +
                                    std::to_string(line_no));
    }
    if (pos != s.size()) {
        throw std::invalid_argument("csv: bad number '" + s + "' on line " +
                                    std::to_string(line_no));
    }
    return v;
}

}  // namespace

PriceRelativeSeries read_series_csv(std::istream& in, CsvMode mode) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("csv: empty input");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::string expected =
        mode == CsvMode::relatives ? "date,x1,x2" : "date,close1,close2";
    if (line != expected) {
        throw std::invalid_argument("csv: expected header '" + expected + "', got '" + line +
                                    "'");
    }

    std::vector<std::string> labels;
    std::vector<double> col1, col2;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = split_csv_row(line);
        if (fields.size() != 3) {
            throw std::invalid_argument("csv: expected 3 fields on line " +
                                        std::to_string(line_no));
        }
        labels.push_back(fields[0]);
        col1.push_back(parse_number(fields[1], line_no));
        col2.push_back(parse_number(fields[2], line_no));
    }

    PriceRelativeSeries series;
    if (mode == CsvMode::relatives) {
        for (std::size_t t = 0; t < col1.size(); ++t) {
            series.append(labels[t], col1[t], col2[t]);
        }
        return series;
    }
    PriceRelativeSeries ratios = from_prices(col1, col2);
    for (std::size_t t = 0; t < ratios.size(); ++t) {
        series.append(labels[t + 1], ratios.x1(t), ratios.x2(t));
    }
    return series;
}

PriceRelativeSeries read_series_csv_file(const std::string& path, CsvMode mode) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    return read_series_csv(in, mode);
}

void write_series_csv(std::ostream& out, const PriceRelativeSeries& series) {
    out << "date,x1,x2\n";
    char buf[64];
    for (std::size_t t = 0; t < series.size(); ++t) {
        if (series.has_labels()) {
            out << series.label(t);
        } else {
            out << (t + 1);
        }
        std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", series.x1(t), series.x2(t));
        out << buf;
    }
}

void write_series_csv_file(const std::string& path, const PriceRelativeSeries& series) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open '" + path + "' for writing");
    write_series_csv(out, series);
}

}  // namespace trp
