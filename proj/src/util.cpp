#include "relay/util.hpp"

#include <cstdio>

namespace relay {

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::string fmt_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string params_fingerprint(const SystemParams& params) {
    const std::string canon = "mu1=" + fmt_exact(params.mu1) + ";mu2=" + fmt_exact(params.mu2) +
                              ";p=" + fmt_exact(params.p) + ";q=" + fmt_exact(params.q) +
                              ";gamma_max=" + fmt_exact(params.gamma_max);
    return hex64(fnv1a64(canon));
}

}  // namespace relay
