#include "halphen/jsonio.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace halphen::jsonio {

Json complex_json(std::complex<double> z) {
    Json j;
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

std::complex<double> complex_from_json(const Json& j) {
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

namespace {

void dump_value(const Json& j, std::ostringstream& out, int indent, int depth) {
    const auto pad = [&](int d) {
        if (indent >= 0) {
            out << '\n';
            for (int i = 0; i < d * indent; ++i) out << ' ';
        }
    };
    switch (j.type()) {
        case Json::value_t::object: {
            out << '{';
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out << ',';
                first = false;
                pad(depth + 1);
                out << Json(it.key()).dump() << ':';
                if (indent >= 0) out << ' ';
                dump_value(it.value(), out, indent, depth + 1);
            }
            if (!first) pad(depth);
            out << '}';
            break;
        }
        case Json::value_t::array: {
            out << '[';
            bool first = true;
            for (const auto& el : j) {
                if (!first) out << ',';
                first = false;
                pad(depth + 1);
                dump_value(el, out, indent, depth + 1);
            }
            if (!first) pad(depth);
            out << ']';
            break;
        }
        case Json::value_t::number_float: {
            const double v = j.get<double>();
            if (!std::isfinite(v)) throw std::invalid_argument("jsonio: non-finite number");
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            out << buf;
            break;
        }
        default:
            out << j.dump();
    }
}

}  // namespace

std::string dump(const Json& j, int indent) {
    std::ostringstream out;
    dump_value(j, out, indent, 0);
    if (indent >= 0) out << '\n';
    return out.str();
}

}  // namespace halphen::jsonio
