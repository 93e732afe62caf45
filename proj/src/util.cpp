#include "aploco/util.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>

#include "aploco/errors.hpp"

namespace aploco {

std::string format_fixed(double value, int precision) {
    if (precision < 0) precision = 0;
    double scale = 1.0;
    for (int i = 0; i < precision; ++i) scale *= 10.0;
    const double scaled = value * scale;
    if (!std::isfinite(scaled) || std::abs(scaled) >= 9.0e15) {  // llround range guard
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", precision, value);
        return buf;
    }
    long long units = std::llround(scaled);  // halves away from zero
    std::string sign;
    if (units < 0) {
        sign = "-";
        units = -units;
    }
    const long long iscale = static_cast<long long>(scale);
    std::string head = std::to_string(units / iscale);
    if (precision == 0) return sign + head;
    std::string frac = std::to_string(units % iscale);
    frac.insert(frac.begin(), static_cast<std::size_t>(precision) - frac.size(), '0');
    return sign + head + "." + frac;
}

std::string format_full(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    std::error_code ec;
    fs::create_directories(dir, ec);
    const fs::path tmp = dir / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out.flush()) {
            fs::remove(tmp, ec);
            throw Error("failed writing '" + tmp.string() + "'");
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw Error("failed renaming '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string iso8601_utc_now() {
    std::time_t t = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        const long long v = std::strtoll(epoch, &end, 10);
        if (end && *end == '\0') t = static_cast<std::time_t>(v);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace aploco
