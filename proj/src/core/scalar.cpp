#include "core/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace detlab {

std::string ring_name(Ring r) {
    switch (r) {
        case Ring::Integer: return "int";
        case Ring::Rational: return "rat";
        case Ring::QPolynomial: return "qpoly";
        case Ring::Multivariate: return "multi";
    }
    throw internal_error("ring_name: bad tag");
}

Ring ring_from_name(const std::string& name) {
    if (name == "int") return Ring::Integer;
    if (name == "rat") return Ring::Rational;
    if (name == "qpoly") return Ring::QPolynomial;
    if (name == "multi") return Ring::Multivariate;
    throw domain_error("unknown ring '" + name + "'");
}

const BigInt& Scalar::as_integer() const {
    if (!is_integer()) throw domain_error("Scalar: not an integer");
    return std::get<BigInt>(v_);
}
const BigRat& Scalar::as_rational() const {
    if (!is_rational()) throw domain_error("Scalar: not a rational");
    return std::get<BigRat>(v_);
}
const QPoly& Scalar::as_qpoly() const {
    if (!is_qpoly()) throw domain_error("Scalar: not a q-polynomial");
    return std::get<QPoly>(v_);
}
const MultiLaurent& Scalar::as_multi() const {
    if (!is_multi()) throw domain_error("Scalar: not multivariate");
    return std::get<MultiLaurent>(v_);
}

bool Scalar::operator==(const Scalar& o) const { return v_ == o.v_; }

std::string Scalar::to_string() const {
    if (is_integer()) return detlab::to_string(as_integer());
    if (is_rational()) return detlab::to_string(as_rational());
    if (is_qpoly()) return as_qpoly().to_string();
    return as_multi().to_string();
}

size_t ExactMatrix::size() const {
    switch (ring) {
        case Ring::Integer: return int_m.size();
        case Ring::Rational: return rat_m.size();
        case Ring::QPolynomial: return qpoly_m.size();
        case Ring::Multivariate: return multi_m.size();
    }
    throw internal_error("ExactMatrix::size: bad tag");
}

Scalar ExactMatrix::entry(size_t i, size_t j) const {
    switch (ring) {
        case Ring::Integer: return Scalar(int_m.at(i, j));
        case Ring::Rational: return Scalar(rat_m.at(i, j));
        case Ring::QPolynomial: return Scalar(qpoly_m.at(i, j));
        case Ring::Multivariate: return Scalar(multi_m.at(i, j));
    }
    throw internal_error("ExactMatrix::entry: bad tag");
}

std::string ExactMatrix::render() const {
    const size_t n = size();
    std::vector<std::string> cells(n * n);
    size_t width = 0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            cells[i * n + j] = entry(i, j).to_string();
            width = std::max(width, cells[i * n + j].size());
        }
    std::ostringstream os;
    for (size_t i = 0; i < n; ++i) {
        os << '[';
        for (size_t j = 0; j < n; ++j) {
            const std::string& c = cells[i * n + j];
            os << std::string(width - c.size(), ' ') << c;
            if (j + 1 < n) os << ' ';
        }
        os << "]\n";
    }
    return os.str();
}

} // namespace detlab
