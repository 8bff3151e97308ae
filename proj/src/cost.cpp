#include "altroute/cost.hpp"

#include <cctype>
#include <stdexcept>

namespace altroute {

Cost Cost::parse(std::string_view text) {
    auto fail = [&] { return std::invalid_argument("bad cost literal '" + std::string(text) + "'"); };
    if (text.empty()) throw fail();

    bool negative = false;
    std::size_t i = 0;
    if (text[0] == '-' || text[0] == '+') {
        negative = text[0] == '-';
        ++i;
    }

    std::int64_t whole_part = 0;
    std::size_t whole_digits = 0;
    for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i, ++whole_digits) {
        if (whole_part > (std::numeric_limits<std::int64_t>::max() / kScale) / 10) throw fail();
        whole_part = whole_part * 10 + (text[i] - '0');
    }

    std::int64_t frac = 0;
    int frac_digits = 0;
    if (i < text.size() && text[i] == '.') {
        ++i;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            if (++frac_digits > kDecimals) throw fail();
            frac = frac * 10 + (text[i] - '0');
        }
    }
    if (i != text.size() || (whole_digits == 0 && frac_digits == 0)) throw fail();

    for (int d = frac_digits; d < kDecimals; ++d) frac *= 10;
    std::int64_t units = whole_part * kScale + frac;
    return Cost{negative ? -units : units};
}

std::string Cost::to_string() const {
    if (is_infinite()) return "inf";
    std::int64_t u = units_;
    std::string out;
    if (u < 0) {
        out.push_back('-');
        u = -u;
    }
    out += std::to_string(u / kScale);
    std::int64_t frac = u % kScale;
    if (frac != 0) {
        std::string digits = std::to_string(frac);
        digits.insert(0, static_cast<std::size_t>(kDecimals) - digits.size(), '0');
        while (digits.back() == '0') digits.pop_back();
        out += '.';
        out += digits;
    }
    return out;
}

}  // namespace altroute
