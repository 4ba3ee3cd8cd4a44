#include "recycg/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>
#include <vector>

namespace recycg {

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& msg) {
    throw ParseError("matrix market: line " + std::to_string(line_no) + ": " + msg);
}

}  // namespace

CsrMatrix parse_matrix_market(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError("matrix market: empty input");
    ++line_no;
    {
        std::istringstream hs(line);
        std::string banner, object, format, field, symmetry;
        hs >> banner >> object >> format >> field >> symmetry;
        if (lower(banner) != "%%matrixmarket") fail(line_no, "missing %%MatrixMarket banner");
        if (lower(object) != "matrix") fail(line_no, "unsupported object '" + object + "'");
        if (lower(format) != "coordinate") fail(line_no, "unsupported format '" + format + "'");
        const std::string f = lower(field);
        if (f != "real" && f != "integer") fail(line_no, "unsupported field '" + field + "'");
        const std::string sym = lower(symmetry);
        if (sym != "general" && sym != "symmetric")
            fail(line_no, "unsupported symmetry '" + symmetry + "'");
        line = sym;
    }
    const bool symmetric = (line == "symmetric");

    // Size line: first non-comment, non-blank line after the banner.
    std::int64_t rows = 0, cols = 0, declared = 0;
    for (;;) {
        if (!std::getline(in, line)) throw ParseError("matrix market: missing size line");
        ++line_no;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ss(line);
        if (!(ss >> rows >> cols >> declared)) fail(line_no, "malformed size line");
        break;
    }
    if (rows != cols) fail(line_no, "matrix is not square");
    if (rows < 1) fail(line_no, "dimension must be >= 1");
    if (declared < 0) fail(line_no, "negative entry count");
    const index_t n = static_cast<index_t>(rows);

    std::vector<std::tuple<index_t, index_t, double>> trip;
    trip.reserve(static_cast<std::size_t>(symmetric ? 2 * declared : declared));
    std::int64_t seen = 0;
    while (seen < declared) {
        if (!std::getline(in, line))
            throw ParseError("matrix market: expected " + std::to_string(declared) +
                             " entries, found " + std::to_string(seen));
        ++line_no;
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ss(line);
        std::int64_t i1 = 0, j1 = 0;
        double v = 0.0;
        if (!(ss >> i1 >> j1 >> v)) fail(line_no, "malformed entry");
        if (i1 < 1 || i1 > rows || j1 < 1 || j1 > cols)
            fail(line_no, "index out of range");
        const index_t i = static_cast<index_t>(i1 - 1);
        const index_t j = static_cast<index_t>(j1 - 1);
        trip.emplace_back(i, j, v);
        if (symmetric && i != j) trip.emplace_back(j, i, v);
        ++seen;
    }

    std::sort(trip.begin(), trip.end(),
              [](const auto& a, const auto& b) {
                  return std::tie(std::get<0>(a), std::get<1>(a)) <
                         std::tie(std::get<0>(b), std::get<1>(b));
              });

    std::vector<index_t> rs(static_cast<std::size_t>(n) + 1, 0);
    std::vector<index_t> ci;
    std::vector<double> va;
    ci.reserve(trip.size());
    va.reserve(trip.size());
    std::size_t k = 0;
    while (k < trip.size()) {
        const index_t i = std::get<0>(trip[k]);
        const index_t j = std::get<1>(trip[k]);
        double v = std::get<2>(trip[k]);
        ++k;
        while (k < trip.size() && std::get<0>(trip[k]) == i && std::get<1>(trip[k]) == j) {
            v += std::get<2>(trip[k]);  // duplicates are summed
            ++k;
        }
        ci.push_back(j);
        va.push_back(v);
        rs[i + 1] = static_cast<index_t>(ci.size());
    }
    for (index_t i = 0; i < n; ++i) rs[i + 1] = std::max(rs[i + 1], rs[i]);

    return CsrMatrix(n, std::move(rs), std::move(ci), std::move(va));
}

CsrMatrix load_matrix_market(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("matrix market: cannot open '" + path + "'");
    return parse_matrix_market(f);
}

void write_matrix_market(std::ostream& out, const CsrMatrix& a) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << a.n() << ' ' << a.n() << ' ' << a.nnz() << '\n';
    char buf[64];
    for (index_t i = 0; i < a.n(); ++i) {
        for (index_t k = a.row_start()[i]; k < a.row_start()[i + 1]; ++k) {
            std::snprintf(buf, sizeof buf, "%" PRId64 " %" PRId64 " %.17g\n",
                          static_cast<std::int64_t>(i) + 1,
                          static_cast<std::int64_t>(a.col_idx()[k]) + 1, a.values()[k]);
            out << buf;
        }
    }
}

}  // namespace recycg
