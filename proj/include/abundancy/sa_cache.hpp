#pragma once

#include "abundancy/arith.hpp"
#include "abundancy/factorization.hpp"
#include "abundancy/superabundant.hpp"

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace abundancy {

/// One cache line: "<n> <p^a*q^b*...> <num>/<den>".
inline std::string format_cache_line(const SuperabundantRecord& r)
{
    return r.n.get_str() + ' ' + r.factorization.to_string() + ' ' + r.index.to_string();
}

/// Parses and re-verifies a cache line: the factorization must rebuild n and
/// the index must equal sigma(n)/n.
inline SuperabundantRecord parse_cache_line(const std::string& line)
{
    std::istringstream in(line);
    std::string n_text, f_text, q_text, extra;
    if (!(in >> n_text >> f_text >> q_text) || (in >> extra)) {
        throw ParseError("cache line must have three fields: '" + line + "'");
    }
    SuperabundantRecord r{parse_integer(n_text), Factorization::parse(f_text), ExactRatio::parse(q_text)};
    if (r.factorization.value() != r.n) throw ParseError("cache line factorization does not match n: '" + line + "'");
    if (abundancy_index(r.factorization) != r.index) throw ParseError("cache line index is wrong: '" + line + "'");
    return r;
}

/// Reads a cache file. A missing file is an empty cache. Records must be
/// strictly increasing in both n and index.
inline std::vector<SuperabundantRecord> load_cache(const std::filesystem::path& path)
{
    std::vector<SuperabundantRecord> out;
    std::ifstream in(path);
    if (!in) return out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        SuperabundantRecord r = parse_cache_line(line);
        if (!out.empty() && (r.n <= out.back().n || r.index <= out.back().index)) {
            throw ParseError(path.string() + ":" + std::to_string(lineno) + ": records out of order");
        }
        out.push_back(std::move(r));
    }
    return out;
}

/// Appends records to a cache file, flushing every `flush_every` records.
class CacheWriter {
public:
    CacheWriter(const std::filesystem::path& path, bool append, std::size_t flush_every = 1000)
        : out_(path, append ? std::ios::app : std::ios::trunc), flush_every_(flush_every)
    {
        if (!out_) throw std::runtime_error("cannot open cache file " + path.string());
    }
    CacheWriter(const CacheWriter&) = delete;
    CacheWriter& operator=(const CacheWriter&) = delete;
    ~CacheWriter() { out_.flush(); }

    void write(const SuperabundantRecord& r)
    {
        out_ << format_cache_line(r) << '\n';
        if (++pending_ >= flush_every_) flush();
    }

    void flush()
    {
        out_.flush();
        pending_ = 0;
        if (!out_) throw std::runtime_error("cache write failed");
    }

private:
    std::ofstream out_;
    std::size_t flush_every_;
    std::size_t pending_ = 0;
};

} // namespace abundancy
