#include "reach/ext_real.hpp"

#include <cmath>

#include "reach/error.hpp"

namespace reach {

ExtReal::ExtReal(double v) : v_(v) {
    if (std::isnan(v)) throw Error("ExtReal: NaN is not an extended real");
    if (v == -kInf) throw Error("ExtReal: -inf is not representable");
}

double ExtReal::value() const {
    if (is_inf()) throw Error("ExtReal: value() on +inf");
    return v_;
}

ExtReal ExtReal::scaled(double lambda) const {
    if (std::isnan(lambda)) throw Error("ExtReal: NaN scale");
    if (is_inf()) {
        if (lambda == 0.0) throw Error("ExtReal: 0 * inf is undefined");
        if (lambda < 0.0) throw Error("ExtReal: negative multiple of +inf");
        return infinity();
    }
    return ExtReal(lambda * v_);
}

std::ostream& operator<<(std::ostream& os, ExtReal x) {
    if (x.is_inf()) return os << "inf";
    return os << x.raw();
}

}  // namespace reach
