#include "fpd/evaluation.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace fpd {

double fuzzy_rand(const MembershipMatrix& m, const ReferencePartition& reference) {
    const std::size_t n = m.n;
    if (reference.labels.size() != n)
        throw std::invalid_argument("reference partition length does not match membership rows");
    if (n < 2) return 1.0;

    // per-pair fuzzy equivalence degrees, accumulated deterministically
    const std::size_t pairs = n * (n - 1) / 2;
    std::vector<double> disagreement(pairs, 0.0);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double l1 = 0.0;
            for (std::size_t k = 0; k < m.c; ++k) l1 += std::fabs(m.at(i, k) - m.at(j, k));
            double ep = 1.0 - 0.5 * l1;
            double eq = reference.labels[i] == reference.labels[j] ? 1.0 : 0.0;
            std::size_t idx = static_cast<std::size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
            disagreement[idx] = std::fabs(ep - eq);
        }
    }
    double total = 0.0;
    for (double d : disagreement) total += d;
    return (static_cast<double>(pairs) - total) / static_cast<double>(pairs);
}

ReferencePartition read_labels_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    ReferencePartition ref;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            ref.labels.push_back(std::stoi(line));
        } catch (const std::exception&) {
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad label '" + line + "'");
        }
    }
    if (ref.labels.empty()) throw std::runtime_error(path + ": no labels");
    return ref;
}

}  // namespace fpd
