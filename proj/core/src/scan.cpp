#include "hohlov/scan.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

#include "json.hpp"

namespace hohlov {

namespace {

constexpr std::array<const char*, 5> kCanonicalOrder = {"a", "b", "c", "lambda", "beta"};
constexpr std::int64_t kMaxRows = 2000000;

std::set<std::string> parameter_names(const TheoremTraits& tr) {
    std::set<std::string> names = {"a", "b", "c"};
    if (tr.has_lambda) names.insert("lambda");
    if (tr.has_beta) names.insert("beta");
    return names;
}

}  // namespace

std::int64_t SweptParam::count() const {
    return static_cast<std::int64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
}

double SweptParam::value(std::int64_t i) const {
    return start + static_cast<double>(i) * step;
}

void ScanRequest::validate() const {
    cfg.validate();
    const TheoremTraits& tr = theorem_traits(theorem);
    const std::set<std::string> wanted = parameter_names(tr);

    if (swept.size() > 3)
        throw ScanRequestError("scan: at most three parameters may be swept");
    std::set<std::string> seen;
    for (const SweptParam& s : swept) {
        if (!wanted.count(s.name))
            throw ScanRequestError("scan: parameter '" + s.name + "' is unknown or not used by " +
                                   theorem_name(theorem));
        if (!seen.insert(s.name).second)
            throw ScanRequestError("scan: parameter '" + s.name + "' swept twice");
        if (fixed.count(s.name))
            throw ScanRequestError("scan: parameter '" + s.name + "' is both fixed and swept");
        if (!std::isfinite(s.start) || !std::isfinite(s.stop) || !std::isfinite(s.step))
            throw ScanRequestError("scan: range for '" + s.name + "' must be finite");
        if (!(s.step > 0.0))
            throw ScanRequestError("scan: range step for '" + s.name + "' must be > 0");
        if (!(s.start < s.stop))
            throw ScanRequestError("scan: range for '" + s.name + "' needs start < stop");
    }
    for (const auto& [name, value] : fixed) {
        if (!wanted.count(name))
            throw ScanRequestError("scan: parameter '" + name + "' is unknown or not used by " +
                                   theorem_name(theorem));
        if (!std::isfinite(value))
            throw ScanRequestError("scan: value for '" + name + "' must be finite");
    }
    for (const std::string& name : wanted) {
        if (!fixed.count(name) && !seen.count(name))
            throw ScanRequestError("scan: parameter '" + name + "' of " + theorem_name(theorem) +
                                   " was not given");
    }

    std::int64_t rows = 1;
    for (const SweptParam& s : swept) {
        rows *= s.count();
        if (rows > kMaxRows)
            throw ScanRequestError("scan: grid exceeds the row limit of 2000000");
    }
}

ScanResult run_scan(const ScanRequest& request) {
    request.validate();
    const TheoremTraits& tr = theorem_traits(request.theorem);

    // Axes in canonical nesting order (a outermost ... beta innermost),
    // regardless of the order they were requested in.
    std::vector<const SweptParam*> axes;
    for (const char* name : kCanonicalOrder)
        for (const SweptParam& s : request.swept)
            if (s.name == name) axes.push_back(&s);

    std::int64_t total = 1;
    std::vector<std::int64_t> counts, strides(axes.size(), 1);
    for (const SweptParam* s : axes) counts.push_back(s->count());
    // stride of axis k = product of counts of the axes nested inside it
    for (std::size_t k = 0; k < axes.size(); ++k) {
        std::int64_t stride = 1;
        for (std::size_t j = k + 1; j < axes.size(); ++j) stride *= counts[j];
        strides[k] = stride;
        total *= counts[k];
    }

    ScanResult result;
    result.rows.resize(static_cast<std::size_t>(total));

    auto evaluate_row = [&](std::int64_t r) {
        std::map<std::string, double> values = request.fixed;
        for (std::size_t k = 0; k < axes.size(); ++k) {
            const std::int64_t idx = (r / strides[k]) % counts[k];
            values[axes[k]->name] = axes[k]->value(idx);
        }
        const OperatorParams params =
            OperatorParams::from_moduli(values.at("a"), values.at("b"), values.at("c"));
        std::optional<double> lambda, beta;
        if (tr.has_lambda) lambda = values.at("lambda");
        if (tr.has_beta) beta = values.at("beta");
        Certificate cert =
            evaluate_certificate(request.theorem, params, lambda, beta, request.cfg);
        if (request.with_oracle) cert = cross_validate(std::move(cert), request.cfg);
        result.rows[static_cast<std::size_t>(r)] = std::move(cert);
    };

    int jobs = request.jobs;
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    jobs = std::clamp(jobs, 1, 64);
    if (jobs == 1 || total < 2) {
        for (std::int64_t r = 0; r < total; ++r) evaluate_row(r);
        return result;
    }

    std::atomic<std::int64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        constexpr std::int64_t chunk = 16;
        for (;;) {
            const std::int64_t begin = next.fetch_add(chunk);
            if (begin >= total) return;
            const std::int64_t end = std::min(begin + chunk, total);
            for (std::int64_t r = begin; r < end; ++r) {
                try {
                    evaluate_row(r);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        }
    };
    std::vector<std::thread> pool;
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (std::thread& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
    return result;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string csv_field(double x) { return std::isnan(x) ? std::string() : format_double(x); }

std::string csv_field(const std::optional<double>& x) {
    return x ? format_double(*x) : std::string();
}

std::string json_number(double x) {
    return std::isfinite(x) ? format_double(x) : std::string("null");
}

std::string json_number(const std::optional<double>& x) {
    return x ? json_number(*x) : std::string("null");
}

}  // namespace

std::string render_csv(const ScanResult& result) {
    std::string out = kCsvHeader;
    out.push_back('\n');
    for (const Certificate& c : result.rows) {
        out += theorem_name(c.theorem);
        out.push_back(',');
        out += format_double(c.params.a_mod);
        out.push_back(',');
        out += format_double(c.params.b_mod);
        out.push_back(',');
        out += format_double(c.params.c);
        out.push_back(',');
        out += csv_field(c.lambda);
        out.push_back(',');
        out += csv_field(c.beta);
        out.push_back(',');
        out += csv_field(c.lhs);
        out.push_back(',');
        out += csv_field(c.rhs);
        out.push_back(',');
        out += csv_field(c.margin);
        out.push_back(',');
        out += verdict_name(c.verdict);
        out.push_back(',');
        if (c.oracle_T) out += format_double(c.oracle_T->value);
        out.push_back('\n');
    }
    return out;
}

std::string render_jsonl(const ScanResult& result) {
    std::string out;
    for (const Certificate& c : result.rows) {
        out += "{\"theorem\":\"" + theorem_name(c.theorem) + "\"";
        out += ",\"a\":" + json_number(c.params.a_mod);
        out += ",\"b\":" + json_number(c.params.b_mod);
        out += ",\"c\":" + json_number(c.params.c);
        out += ",\"lambda\":" + json_number(c.lambda);
        out += ",\"beta\":" + json_number(c.beta);
        out += ",\"lhs\":" + json_number(c.lhs);
        out += ",\"rhs\":" + json_number(c.rhs);
        out += ",\"margin\":" + json_number(c.margin);
        out += ",\"verdict\":\"" + verdict_name(c.verdict) + "\"";
        out += ",\"oracle_T\":";
        out += c.oracle_T ? json_number(c.oracle_T->value) : std::string("null");
        out += "}\n";
    }
    return out;
}

std::string certificate_json(const Certificate& cert) {
    nlohmann::ordered_json j;
    j["theorem"] = theorem_name(cert.theorem);
    j["a"] = cert.params.a_mod;
    j["b"] = cert.params.b_mod;
    j["c"] = cert.params.c;
    if (cert.params.raw_a)
        j["a_complex"] = {cert.params.raw_a->real(), cert.params.raw_a->imag()};
    if (cert.params.raw_b)
        j["b_complex"] = {cert.params.raw_b->real(), cert.params.raw_b->imag()};
    j["lambda"] = nullptr;
    if (cert.lambda) j["lambda"] = *cert.lambda;
    j["beta"] = nullptr;
    if (cert.beta) j["beta"] = *cert.beta;
    j["preconditions"] = nlohmann::ordered_json::array();
    for (const PreconditionCheck& row : cert.preconditions) {
        j["preconditions"].push_back({{"name", row.name},
                                      {"required", row.required},
                                      {"margin", row.margin},
                                      {"pass", row.pass}});
    }
    j["lhs"] = cert.lhs;
    j["rhs"] = cert.rhs;
    j["margin"] = cert.margin;
    j["verdict"] = verdict_name(cert.verdict);
    j["oracle_T"] = nullptr;
    if (cert.oracle_T) {
        j["oracle_T"] = {{"value", cert.oracle_T->value},
                         {"terms_used", cert.oracle_T->terms_used},
                         {"tail_bound", cert.oracle_T->tail_bound},
                         {"converged", cert.oracle_T->converged}};
    }
    return j.dump(2);
}

}  // namespace hohlov
