#include "boxlab/rational.hpp"

#include <cctype>

namespace boxlab {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat parse_rational(const std::string& text) {
    std::string s = text;
    bool negative = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        negative = (s[0] == '-');
        s.erase(0, 1);
    }
    if (s.empty()) throw SpecError("empty numeric literal");

    Rat value;
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::string num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            throw SpecError("bad fraction literal: " + text);
        BigInt d(den);
        if (d == 0) throw SpecError("zero denominator: " + text);
        value = Rat(BigInt(num), d);
    } else {
        auto dot = s.find('.');
        if (dot == std::string::npos) {
            if (!all_digits(s)) throw SpecError("bad numeric literal: " + text);
            value = Rat(BigInt(s));
        } else {
            std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
            if (whole.empty()) whole = "0";
            if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
                throw SpecError("bad decimal literal: " + text);
            BigInt scale = ipow(BigInt(10), static_cast<unsigned>(frac.size()));
            BigInt digits = BigInt(whole) * scale + (frac.empty() ? BigInt(0) : BigInt(frac));
            value = Rat(digits, scale);
        }
    }
    if (negative) value = -value;
    return value;
}

std::string rat_to_string(const Rat& r) {
    BigInt n = rat_num(r), d = rat_den(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

}  // namespace boxlab
