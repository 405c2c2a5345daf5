#pragma once

#include "abundancy/abundancy.hpp"
#include "abundancy/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <ostream>
#include <string>
#include <vector>

namespace abundancy::cli {

enum class OutputFormat { text, json, csv };

/// Throttled progress lines on the error stream.
class ProgressReporter {
public:
    ProgressReporter(std::ostream& err, std::string label, std::chrono::seconds every = std::chrono::seconds(5))
        : err_(err), label_(std::move(label)), every_(every), last_(std::chrono::steady_clock::now())
    {
    }

    void operator()(std::uint64_t done, std::uint64_t total)
    {
        std::lock_guard lock(mu_);
        const auto now = std::chrono::steady_clock::now();
        if (now - last_ < every_) return;
        last_ = now;
        err_ << label_ << ": " << done << "/" << total << " (" << (total ? 100 * done / total : 100) << "%)\n";
        err_.flush();
    }

private:
    std::ostream& err_;
    std::string label_;
    std::chrono::steady_clock::duration every_;
    std::chrono::steady_clock::time_point last_;
    std::mutex mu_;
};

struct GlobalOptions {
    OutputFormat format = OutputFormat::text;
    int precision = kDefaultPrecisionDigits;
    std::uint64_t search_bound = kDefaultSearchBound;
    std::string cache_path = "./superabundant.cache";
    unsigned threads = default_thread_count();
};

/// Rows of one subcommand result with their CSV column order and a text rendering.
struct Output {
    std::vector<std::string> fields;
    std::vector<Json> rows;
    std::vector<std::string> text;
};

namespace detail {

inline std::uint64_t parse_u64(const std::string& text, const char* what)
{
    const mpz_class z = parse_integer(text);
    if (!fits_u64(z)) throw std::out_of_range(std::string(what) + " does not fit in 64 bits: " + text);
    return to_u64(z);
}

inline ExactRatio parse_rational(const std::string& text, std::ostream& err)
{
    const ExactRatio q = ExactRatio::parse(text);
    const auto slash = text.find('/');
    if (slash != std::string::npos && parse_integer(text.substr(slash + 1)) != q.denominator()) {
        err << "note: " << text << " reduced to " << q.to_string() << "\n";
    }
    return q;
}

inline std::string approx(const ExactRatio& q, int places = 4) { return q.to_decimal(places); }

inline std::string classification_text(const Classification& c)
{
    std::string s(to_string(c.tag));
    if (c.multiperfect_order) s += " (multiperfect order " + std::to_string(*c.multiperfect_order) + ")";
    return s;
}

inline Json order_json(const Classification& c)
{
    return c.multiperfect_order ? Json(*c.multiperfect_order) : Json(nullptr);
}

inline std::string robin_text(const RobinReport& r)
{
    return r.n.get_str() + ": " + std::string(to_string(r.verdict)) + " (I(n) = " + r.index.to_string() + " ≈ " +
           approx(r.index) + ", bound ≈ " + r.bound.midpoint_decimal(4) + ", precision " + std::to_string(r.precision_digits) + ")";
}

inline std::string lagarias_text(const LagariasReport& r)
{
    return std::to_string(r.n) + ": " + std::string(to_string(r.verdict)) + " (σ(n) = " + r.sigma.get_str() +
           ", e^H ln H + H ≈ " + r.bound.midpoint_decimal(4) + ", precision " + std::to_string(r.precision_digits) + ")";
}

/// Evaluates `row(n)` for n in [first, last] on the scan pool, in order.
template <class Row>
std::vector<Row> range_rows(std::uint64_t first, std::uint64_t last, const GlobalOptions& g, std::ostream& err,
                            const std::string& label, std::function<Row(std::uint64_t)> row)
{
    ProgressReporter progress(err, label);
    ScanOptions opts{g.threads, std::ref(progress)};
    auto chunks = scan_chunks<std::vector<Row>>(first, last + 1, opts, [&](std::uint64_t lo, std::uint64_t hi) {
        std::vector<Row> out;
        for (std::uint64_t n = lo; n < hi; ++n) out.push_back(row(n));
        return out;
    }, 256);
    std::vector<Row> rows;
    for (auto& c : chunks) {
        for (auto& r : c) rows.push_back(std::move(r));
    }
    return rows;
}

} // namespace detail

inline void emit(const Output& o, OutputFormat format, std::ostream& out)
{
    switch (format) {
    case OutputFormat::text:
        for (const auto& line : o.text) out << line << '\n';
        break;
    case OutputFormat::json:
        for (const auto& row : o.rows) out << row.dump() << '\n';
        break;
    case OutputFormat::csv:
        write_csv_header(out, o.fields);
        for (const auto& row : o.rows) write_csv_row(out, o.fields, row);
        break;
    }
}

/// Entry point shared by the executable and the tests. Exit codes: 0 success,
/// 1 domain error, 2 usage error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    using namespace detail;
    CLI::App app{"Abundancy index, outlaws, superabundant numbers and Robin-type inequalities", "abundancy"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    const std::map<std::string, OutputFormat> formats{{"text", OutputFormat::text}, {"json", OutputFormat::json}, {"csv", OutputFormat::csv}};
    app.add_option("--format", g.format, "Output format")->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    app.add_option("--precision", g.precision, "Enclosure precision in decimal digits")->check(CLI::Range(kMinPrecisionDigits, kMaxPrecisionDigits));
    app.add_option("--search-bound", g.search_bound, "Largest n tried by witness searches")->check(CLI::PositiveNumber);
    app.add_option("--cache-path", g.cache_path, "Superabundant record cache");
    app.add_option("--threads", g.threads, "Worker threads for scans")->check(CLI::PositiveNumber);

    std::string n_arg, q_arg, to_arg;
    std::function<Output()> action;

    auto integer_cmd = [&](const char* name, const char* help) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("n", n_arg, "Positive integer")->required();
        return sub;
    };

    // arith_core
    integer_cmd("index", "Abundancy index I(n) = σ(n)/n")->callback([&] {
        action = [&] {
            const auto f = factorize(parse_u64(n_arg, "n"));
            const ExactRatio q = abundancy_index(f);
            const Classification c = classify(f);
            Output o{{"n", "sigma", "index_num", "index_den", "classification", "multiperfect_order"}, {}, {}};
            o.rows.push_back(Json{{"n", f.value().get_str()}, {"sigma", sigma(f).get_str()}, {"index_num", q.numerator().get_str()},
                                  {"index_den", q.denominator().get_str()}, {"classification", std::string(to_string(c.tag))},
                                  {"multiperfect_order", order_json(c)}});
            o.text.push_back(q.to_string() + " ≈ " + approx(q) + ", " + classification_text(c));
            return o;
        };
    });
    integer_cmd("sigma", "Sum of divisors σ(n)")->callback([&] {
        action = [&] {
            const auto f = factorize(parse_u64(n_arg, "n"));
            Output o{{"n", "sigma", "factorization"}, {}, {}};
            o.rows.push_back(Json{{"n", f.value().get_str()}, {"sigma", sigma(f).get_str()}, {"factorization", f.to_string()}});
            o.text.push_back(sigma(f).get_str());
            return o;
        };
    });
    integer_cmd("classify", "Perfect / abundant / deficient, with multiperfect order")->callback([&] {
        action = [&] {
            const auto f = factorize(parse_u64(n_arg, "n"));
            const Classification c = classify(f);
            const ExactRatio q = abundancy_index(f);
            Output o{{"n", "classification", "multiperfect_order", "index_num", "index_den"}, {}, {}};
            o.rows.push_back(Json{{"n", f.value().get_str()}, {"classification", std::string(to_string(c.tag))},
                                  {"multiperfect_order", order_json(c)}, {"index_num", q.numerator().get_str()},
                                  {"index_den", q.denominator().get_str()}});
            o.text.push_back(classification_text(c));
            return o;
        };
    });
    integer_cmd("bounds", "prod (p+1)/p <= I(n) <= prod p/(p-1)")->callback([&] {
        action = [&] {
            const auto f = factorize(parse_u64(n_arg, "n"));
            const IndexBounds b = index_bounds(f);
            const ExactRatio q = abundancy_index(f);
            Output o{{"n", "lower_num", "lower_den", "index_num", "index_den", "upper_num", "upper_den"}, {}, {}};
            o.rows.push_back(Json{{"n", f.value().get_str()}, {"lower_num", b.lower.numerator().get_str()},
                                  {"lower_den", b.lower.denominator().get_str()}, {"index_num", q.numerator().get_str()},
                                  {"index_den", q.denominator().get_str()}, {"upper_num", b.upper.numerator().get_str()},
                                  {"upper_den", b.upper.denominator().get_str()}});
            o.text.push_back(b.lower.to_string() + " <= " + q.to_string() + " <= " + b.upper.to_string());
            return o;
        };
    });
    auto* even_perfect_cmd = app.add_subcommand("even-perfect", "First even perfect numbers via Lucas-Lehmer");
    std::size_t perfect_count = 0;
    even_perfect_cmd->add_option("count", perfect_count, "How many")->required()->check(CLI::Range(1, 40));
    even_perfect_cmd->callback([&] {
        action = [&] {
            Output o{{"p", "n"}, {}, {}};
            for (const auto& e : even_perfect_numbers(perfect_count)) {
                o.rows.push_back(Json{{"p", e.exponent}, {"n", e.value.get_str()}});
                o.text.push_back("p=" + std::to_string(e.exponent) + "  " + e.value.get_str());
            }
            return o;
        };
    });

    // outlaw_engine
    const std::vector<std::string> verdict_fields{"q_num", "q_den", "status", "witness", "rule", "search_bound", "detail"};
    auto* outlaw_cmd = app.add_subcommand("outlaw", "Decide whether a rational q > 1 is an abundancy index");
    outlaw_cmd->add_option("q", q_arg, "Rational r/s or integer")->required();
    outlaw_cmd->callback([&] {
        action = [&] {
            const ExactRatio q = parse_rational(q_arg, err);
            ProgressReporter progress(err, "witness search");
            const OutlawVerdict v = classify_rational(q, g.search_bound, ScanOptions{g.threads, std::ref(progress)});
            Output o{verdict_fields, {to_json(q, v)}, {describe(v)}};
            return o;
        };
    });

    auto* family_cmd = app.add_subcommand("outlaw-family", "Members of the known outlaw families");
    family_cmd->require_subcommand(1);
    std::uint64_t fam_p = 0, fam_q = 0;
    std::string fam_n;
    const std::vector<std::string> family_fields{"family", "applies", "value_num", "value_den", "status", "witness", "rule", "detail"};
    auto family_output = [&](const char* family, const std::optional<FamilyMember>& m) {
        Output o{family_fields, {}, {}};
        if (!m) {
            o.rows.push_back(Json{{"family", family}, {"applies", false}, {"value_num", nullptr}, {"value_den", nullptr},
                                  {"status", nullptr}, {"witness", nullptr}, {"rule", nullptr}, {"detail", "family conditions not met"}});
            o.text.push_back("family conditions not met (q > 3, q > p, gcd(p, q+2) = gcd(q, p+2) = 1)");
            return o;
        }
        Json v = to_json(m->value, m->verdict);
        o.rows.push_back(Json{{"family", family}, {"applies", true}, {"value_num", v["q_num"]}, {"value_den", v["q_den"]},
                              {"status", v["status"]}, {"witness", v["witness"]}, {"rule", v["rule"]}, {"detail", v["detail"]}});
        o.text.push_back(m->value.to_string() + "  " + describe(m->verdict));
        return o;
    };
    auto* fam_2p = family_cmd->add_subcommand("2p", "(σ(2p)+1)/2p");
    fam_2p->add_option("p", fam_p, "Prime")->required();
    fam_2p->callback([&] { action = [&] { return family_output("2p", family_2p(fam_p)); }; });
    auto* fam_pq = family_cmd->add_subcommand("pq", "(σ(pq)+1)/pq");
    fam_pq->add_option("p", fam_p, "Prime")->required();
    fam_pq->add_option("q", fam_q, "Prime")->required();
    fam_pq->callback([&] { action = [&] { return family_output("pq", family_pq(fam_p, fam_q)); }; });
    auto* fam_ep = family_cmd->add_subcommand("even-perfect", "(σ(2N)+1)/2N");
    fam_ep->add_option("N", fam_n, "Even perfect number")->required();
    fam_ep->callback([&] { action = [&] { return family_output("even-perfect", family_even_perfect(parse_integer(fam_n))); }; });

    auto* witness_cmd = app.add_subcommand("witness", "Smallest n <= search bound with I(n) = q");
    witness_cmd->add_option("q", q_arg, "Rational r/s or integer")->required();
    witness_cmd->callback([&] {
        action = [&] {
            const ExactRatio q = parse_rational(q_arg, err);
            ProgressReporter progress(err, "witness search");
            const auto w = find_index_witness(q, g.search_bound, ScanOptions{g.threads, std::ref(progress)});
            Output o{{"q_num", "q_den", "bound", "witness"}, {}, {}};
            o.rows.push_back(Json{{"q_num", q.numerator().get_str()}, {"q_den", q.denominator().get_str()},
                                  {"bound", std::to_string(g.search_bound)}, {"witness", w ? Json(std::to_string(*w)) : Json(nullptr)}});
            o.text.push_back(w ? std::to_string(*w) : "none up to " + std::to_string(g.search_bound));
            return o;
        };
    });

    // superabundant_engine
    auto* sa_cmd = app.add_subcommand("superabundant", "Superabundant numbers up to a limit");
    std::string sa_limit = "1000000";
    std::string sa_method = "structured";
    bool sa_resume = false;
    sa_cmd->add_option("--limit", sa_limit, "Upper bound (inclusive)");
    sa_cmd->add_option("--method", sa_method, "Enumeration method")->check(CLI::IsMember({"bruteforce", "structured", "both"}));
    sa_cmd->add_flag("--resume", sa_resume, "Continue from the cache file");
    sa_cmd->callback([&] {
        action = [&] {
            const mpz_class limit = parse_integer(sa_limit);
            if (limit < 1) throw std::invalid_argument("--limit must be positive");
            std::vector<SuperabundantRecord> prefix;
            if (sa_resume) prefix = load_cache(g.cache_path);
            const bool extends_cache = !sa_resume || prefix.empty() || prefix.back().n < limit;
            std::optional<CacheWriter> writer;
            if (extends_cache) writer.emplace(g.cache_path, sa_resume);
            SweepOptions opts;
            if (sa_resume) opts.resume_from = &prefix;
            if (writer) opts.on_record = [&](const SuperabundantRecord& r) { writer->write(r); };

            std::vector<SuperabundantRecord> records;
            std::string agreement;
            if (sa_method == "bruteforce") {
                records = superabundant_bruteforce(to_u64(limit), opts);
            } else {
                records = superabundant_structured(limit, opts);
                if (sa_method == "both") {
                    const auto brute = superabundant_bruteforce(to_u64(limit));
                    if (brute != records) throw std::runtime_error("structured and brute-force enumerations disagree");
                    agreement = "methods agree";
                }
            }
            if (writer) writer->flush();

            Output o{{"n", "factorization", "index_num", "index_den"}, {}, {}};
            for (const auto& r : records) {
                o.rows.push_back(to_json(r));
                o.text.push_back(r.n.get_str() + "  " + r.factorization.to_string() + "  " + r.index.to_string());
            }
            o.text.push_back(std::to_string(records.size()) + " records");
            if (!agreement.empty()) o.text.push_back(agreement);
            return o;
        };
    });

    auto* count_cmd = app.add_subcommand("count", "S(x): superabundant numbers <= x, and whether S(x) >= ln x");
    count_cmd->add_option("x", n_arg, "Positive integer")->required();
    count_cmd->callback([&] {
        action = [&] {
            const mpz_class x = parse_integer(n_arg);
            const SuperabundantCount c = count_superabundant(x);
            BigFloat lx(static_cast<mpfr_prec_t>(mpz_sizeinbase(x.get_mpz_t(), 2) + 64));
            mpfr_set_z(lx.get(), x.get_mpz_t(), MPFR_RNDN);
            mpfr_log(lx.get(), lx.get(), MPFR_RNDN);
            Output o{{"x", "count", "log_x", "log_lower_bound_holds"}, {}, {}};
            o.rows.push_back(Json{{"x", x.get_str()}, {"count", c.count}, {"log_x", lx.to_fixed(6, MPFR_RNDN)},
                                  {"log_lower_bound_holds", c.log_lower_bound_holds}});
            o.text.push_back("S(" + x.get_str() + ") = " + std::to_string(c.count) + ", ln x ≈ " + lx.to_fixed(4, MPFR_RNDN) +
                             ", S(x) >= ln x: " + (c.log_lower_bound_holds ? "true" : "false"));
            return o;
        };
    });

    // rh_frontier
    auto robin_like = [&](const char* name, const char* help, std::function<RobinReport(std::uint64_t)> check) {
        auto* sub = integer_cmd(name, help);
        sub->add_option("--to", to_arg, "Check every n from the first argument through this value");
        sub->callback([&, check, label = std::string(name)] {
            action = [&, check, label] {
                const std::uint64_t first = parse_u64(n_arg, "n");
                const std::uint64_t last = to_arg.empty() ? first : parse_u64(to_arg, "--to");
                if (last < first) throw std::invalid_argument("--to must not be below n");
                Output o{report_fields(), {}, {}};
                for (auto& r : range_rows<RobinReport>(first, last, g, err, label, check)) {
                    o.rows.push_back(to_json(r));
                    o.text.push_back(robin_text(r));
                }
                return o;
            };
        });
    };
    robin_like("robin", "I(n) < e^γ ln ln n, certified", [&](std::uint64_t n) { return robin_check(n, g.precision); });
    robin_like("robin-unconditional", "I(n) < e^γ ln ln n + 0.6483 / ln ln n, certified",
               [&](std::uint64_t n) { return robin_unconditional_check(n, g.precision); });

    integer_cmd("exceptions", "Every n in [3, threshold) violating Robin's inequality")->callback([&] {
        action = [&] {
            const std::uint64_t threshold = parse_u64(n_arg, "threshold");
            ProgressReporter progress(err, "exceptions");
            const auto ex = exceptions_below(threshold, g.precision, ScanOptions{g.threads, std::ref(progress)});
            Output o{report_fields(), {}, {}};
            std::string line;
            for (std::uint64_t n : ex) {
                o.rows.push_back(to_json(robin_check(n, g.precision)));
                line += (line.empty() ? "" : " ") + std::to_string(n);
            }
            o.text.push_back(line);
            o.text.push_back(std::to_string(ex.size()) + " exceptions below " + std::to_string(threshold));
            return o;
        };
    });

    auto* lagarias_cmd = integer_cmd("lagarias", "σ(n) <= e^{H_n} ln H_n + H_n, certified");
    lagarias_cmd->add_option("--to", to_arg, "Check every n from the first argument through this value");
    lagarias_cmd->callback([&] {
        action = [&] {
            const std::uint64_t first = parse_u64(n_arg, "n");
            const std::uint64_t last = to_arg.empty() ? first : parse_u64(to_arg, "--to");
            if (last < first) throw std::invalid_argument("--to must not be below n");
            Output o{report_fields(), {}, {}};
            for (auto& r : range_rows<LagariasReport>(first, last, g, err, "lagarias",
                                                      [&](std::uint64_t n) { return lagarias_check(n, g.precision); })) {
                o.rows.push_back(to_json(r));
                o.text.push_back(lagarias_text(r));
            }
            return o;
        };
    });

    auto* gronwall_cmd = integer_cmd("gronwall", "I(n) / (e^γ ln ln n), certified enclosure");
    bool gronwall_sa = false;
    gronwall_cmd->add_option("--to", to_arg, "Report every n from the first argument through this value");
    gronwall_cmd->add_flag("--superabundant", gronwall_sa, "Report the superabundant n in [3, n] instead");
    gronwall_cmd->callback([&] {
        action = [&] {
            Output o{{"n", "index_num", "index_den", "ratio_lo", "ratio_hi", "precision"}, {}, {}};
            auto add = [&](const Factorization& f) {
                const BoundInterval r = gronwall_ratio(f, g.precision);
                const ExactRatio q = abundancy_index(f);
                o.rows.push_back(Json{{"n", f.value().get_str()}, {"index_num", q.numerator().get_str()},
                                      {"index_den", q.denominator().get_str()}, {"ratio_lo", r.lo_decimal()},
                                      {"ratio_hi", r.hi_decimal()}, {"precision", r.precision_digits()}});
                o.text.push_back(f.value().get_str() + ": " + r.midpoint_decimal(6));
            };
            if (gronwall_sa) {
                for (const auto& rec : superabundant_structured(parse_integer(n_arg))) {
                    if (rec.n >= 3) add(rec.factorization);
                }
                return o;
            }
            const std::uint64_t first = parse_u64(n_arg, "n");
            const std::uint64_t last = to_arg.empty() ? first : parse_u64(to_arg, "--to");
            if (last < first) throw std::invalid_argument("--to must not be below n");
            for (std::uint64_t n = first; n <= last; ++n) add(factorize(n));
            return o;
        };
    });

    integer_cmd("akbary-scan", "Robin's inequality on superabundant n in (5040, limit]")->callback([&] {
        action = [&] {
            auto fields = report_fields();
            fields.push_back("rh_counterexample_candidate");
            Output o{fields, {}, {}};
            for (const auto& e : akbary_scan(parse_integer(n_arg), g.precision)) {
                Json row = to_json(e.report);
                row["rh_counterexample_candidate"] = e.rh_counterexample_candidate;
                o.rows.push_back(std::move(row));
                o.text.push_back(robin_text(e.report) + (e.rh_counterexample_candidate ? "  ** RH counterexample candidate **" : ""));
            }
            o.text.push_back(std::to_string(o.rows.size()) + " superabundant numbers checked");
            return o;
        };
    });

    integer_cmd("harmonic", "H_n exactly (n <= 10^4) and as a certified enclosure")->callback([&] {
        action = [&] {
            const HarmonicValue h = harmonic(parse_u64(n_arg, "n"), g.precision);
            Output o{{"n", "exact_num", "exact_den", "lo", "hi", "precision"}, {}, {}};
            o.rows.push_back(Json{{"n", std::to_string(h.n)},
                                  {"exact_num", h.exact ? Json(h.exact->numerator().get_str()) : Json(nullptr)},
                                  {"exact_den", h.exact ? Json(h.exact->denominator().get_str()) : Json(nullptr)},
                                  {"lo", h.enclosure.lo_decimal()}, {"hi", h.enclosure.hi_decimal()},
                                  {"precision", h.enclosure.precision_digits()}});
            o.text.push_back((h.exact ? h.exact->to_string() + " ≈ " : std::string("≈ ")) + h.enclosure.midpoint_decimal(10));
            return o;
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << "run with --help for usage\n";
        return 2;
    }

    try {
        const Output o = action();
        emit(o, g.format, out);
        return 0;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace abundancy::cli
