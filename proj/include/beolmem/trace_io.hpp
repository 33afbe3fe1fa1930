#pragma once

// Text trace files, optionally gzip-compressed:
//
//   # comment
//   <cycle> <R|W|RR|RW> <hex address> <size> [stream_id]
//
// zlib's gz reader passes plain files through unchanged, so one reader
// handles both. Files are written compressed when the name ends in ".gz".

#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "beolmem/error.hpp"
#include "beolmem/memsys.hpp"

namespace beolmem {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < s.size() && s[j] != ' ' && s[j] != '\t' && s[j] != '\r') ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

template <class T>
bool parse_int(std::string_view s, T& out, int base = 10) {
    if (base == 16 && s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out, base);
    return ec == std::errc() && p == s.data() + s.size();
}

struct GzCloser {
    void operator()(gzFile f) const {
        if (f) gzclose(f);
    }
};
using GzHandle = std::unique_ptr<gzFile_s, GzCloser>;

}  // namespace detail

inline TraceEvent parse_trace_line(std::string_view line, std::size_t line_no) {
    const auto tok = detail::split_ws(line);
    if (tok.size() < 4 || tok.size() > 5)
        throw ParseError("expected '<cycle> <R|W|RR|RW> <hex address> <size> [stream_id]'", line_no);
    TraceEvent e;
    if (!detail::parse_int(tok[0], e.cycle) || e.cycle < 0) throw ParseError("bad cycle '" + std::string(tok[0]) + "'", line_no);
    if (tok[1] == "R") e.kind = EventKind::Read;
    else if (tok[1] == "W") e.kind = EventKind::Write;
    else if (tok[1] == "RR") e.kind = EventKind::RegRead;
    else if (tok[1] == "RW") e.kind = EventKind::RegWrite;
    else throw ParseError("bad access kind '" + std::string(tok[1]) + "'", line_no);
    if (!detail::parse_int(tok[2], e.address, 16)) throw ParseError("bad address '" + std::string(tok[2]) + "'", line_no);
    if (!detail::parse_int(tok[3], e.size) || e.size == 0) throw ParseError("bad size '" + std::string(tok[3]) + "'", line_no);
    if (tok.size() == 5 && !detail::parse_int(tok[4], e.stream_id))
        throw ParseError("bad stream id '" + std::string(tok[4]) + "'", line_no);
    return e;
}

inline Trace parse_trace(std::istream& in) {
    Trace t;
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++n;
        const auto hash = line.find('#');
        std::string_view body(line.data(), hash == std::string::npos ? line.size() : hash);
        if (detail::split_ws(body).empty()) continue;
        t.push_back(parse_trace_line(body, n));
        if (t.size() > 1 && t.back().cycle < t[t.size() - 2].cycle)
            throw ParseError("cycles must be non-decreasing", n);
    }
    return t;
}

inline Trace read_trace(const std::string& path) {
    detail::GzHandle f(gzopen(path.c_str(), "rb"));
    if (!f) throw ConfigError("cannot open trace '" + path + "'");
    std::string data;
    char buf[1 << 16];
    int got;
    while ((got = gzread(f.get(), buf, sizeof buf)) > 0) data.append(buf, std::size_t(got));
    if (got < 0) throw ParseError("corrupt compressed trace '" + path + "'", 0);
    std::istringstream in(data);
    return parse_trace(in);
}

inline std::string format_trace(const Trace& t) {
    std::string out;
    char line[96];
    for (const auto& e : t) {
        const int n = std::snprintf(line, sizeof line, "%lld %s 0x%llx %u %d\n", static_cast<long long>(e.cycle),
                                    std::string(to_string(e.kind)).c_str(),
                                    static_cast<unsigned long long>(e.address), e.size, e.stream_id);
        out.append(line, std::size_t(n));
    }
    return out;
}

inline void write_trace(const std::string& path, const Trace& t) {
    const std::string text = format_trace(t);
    const bool gz = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
    if (gz) {
        detail::GzHandle f(gzopen(path.c_str(), "wb"));
        if (!f || gzwrite(f.get(), text.data(), unsigned(text.size())) != int(text.size()))
            throw ConfigError("cannot write trace '" + path + "'");
        return;
    }
    std::unique_ptr<FILE, int (*)(FILE*)> f(std::fopen(path.c_str(), "wb"), &std::fclose);
    if (!f || std::fwrite(text.data(), 1, text.size(), f.get()) != text.size())
        throw ConfigError("cannot write trace '" + path + "'");
}

}  // namespace beolmem
