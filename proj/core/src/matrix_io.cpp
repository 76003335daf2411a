#include "qgcl/matrix_io.hpp"

#include "qgcl/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qgcl {

namespace {

constexpr double kPrintFloor = 5e-15;

std::string formatReal(double x, int digits) {
    if (std::abs(x) < kPrintFloor) x = 0.0;
    if (x == 0.0) x = 0.0; // drop the sign of negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

double parseReal(std::string_view s, std::string_view whole) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double value = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, value);
    if (s.empty() || ec != std::errc() || ptr != end) {
        throw ParseError("malformed number '" + std::string(whole) + "'", 0, 0);
    }
    return value;
}

} // namespace

std::string formatComplex(Complex z, int digits) {
    double re = std::abs(z.real()) < kPrintFloor ? 0.0 : z.real();
    double im = std::abs(z.imag()) < kPrintFloor ? 0.0 : z.imag();
    if (im == 0.0) return formatReal(re, digits);
    std::string imag;
    if (im == 1.0) {
        imag = "i";
    } else if (im == -1.0) {
        imag = "-i";
    } else {
        imag = formatReal(im, digits) + "i";
    }
    if (re == 0.0) return imag;
    std::string out = formatReal(re, digits);
    if (imag.front() != '-') out += '+';
    return out + imag;
}

std::string formatMatrix(const CMatrix& m, int digits) {
    std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c) out += ' ';
            out += formatComplex(m(r, c), digits);
        }
        out += '\n';
    }
    return out;
}

Complex parseComplex(std::string_view token) {
    if (token.empty()) throw ParseError("empty number", 0, 0);
    if (token.back() != 'i') return {parseReal(token, token), 0.0};
    std::string_view body = token.substr(0, token.size() - 1);
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    std::string_view realPart = split == std::string_view::npos ? std::string_view{} : body.substr(0, split);
    std::string_view imagPart = split == std::string_view::npos ? body : body.substr(split);
    double im = 0.0;
    if (imagPart.empty() || imagPart == "+") {
        im = 1.0;
    } else if (imagPart == "-") {
        im = -1.0;
    } else {
        im = parseReal(imagPart, token);
    }
    const double re = realPart.empty() ? 0.0 : parseReal(realPart, token);
    return {re, im};
}

CMatrix parseMatrixText(std::string_view text) {
    std::istringstream in{std::string(text)};
    long long rows = -1;
    long long cols = -1;
    if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
        throw ParseError("matrix text must start with 'rows cols'", 1, 1);
    }
    std::vector<Complex> data;
    data.reserve(static_cast<std::size_t>(rows * cols));
    std::string tok;
    while (in >> tok) data.push_back(parseComplex(tok));
    if (data.size() != static_cast<std::size_t>(rows * cols)) {
        throw ParseError("expected " + std::to_string(rows * cols) + " matrix entries, found " +
                             std::to_string(data.size()),
                         1, 1);
    }
    return CMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(data));
}

CMatrix readMatrixFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open matrix file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parseMatrixText(buf.str());
}

} // namespace qgcl
