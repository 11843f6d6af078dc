#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "hohlov/certificates.hpp"
#include "hohlov/config.hpp"

namespace hohlov {

// Bad scan request (unknown parameter, range with start >= stop, a parameter
// both fixed and swept, ...).  The CLI maps this to its usage exit code.
struct ScanRequestError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// One swept axis: values start, start+step, ..., up to stop inclusive.
struct SweptParam {
    std::string name;  // "a", "b", "c", "lambda", "beta"
    double start;
    double stop;  // must be > start
    double step;  // must be > 0
    std::int64_t count() const;
    double value(std::int64_t i) const;  // start + i*step (not accumulated)
};

enum class ScanFormat { Csv, Jsonl };

// A grid evaluation request.  Every parameter the theorem uses must appear
// exactly once, either in `fixed` or (at most three of them) in `swept`.
struct ScanRequest {
    TheoremId theorem;
    std::map<std::string, double> fixed;
    std::vector<SweptParam> swept;
    ScanFormat format = ScanFormat::Csv;
    bool with_oracle = false;  // attach worst_case_T to Holds/Fails rows
    int jobs = 1;              // worker threads; results identical for any value
    EvalConfig cfg;

    void validate() const;
};

struct ScanResult {
    std::vector<Certificate> rows;  // lexicographic in (a, b, c, lambda, beta)
};

// Evaluate the grid.  Rows are computed independently (possibly in parallel)
// and emitted in canonical sweep order, so output is deterministic for any
// job count.
ScanResult run_scan(const ScanRequest& request);

// CSV with header  theorem,a,b,c,lambda,beta,lhs,rhs,margin,verdict,oracle_T
// and 17-significant-digit floats; inapplicable/unevaluated fields are empty.
std::string render_csv(const ScanResult& result);
inline constexpr const char* kCsvHeader =
    "theorem,a,b,c,lambda,beta,lhs,rhs,margin,verdict,oracle_T";

// One JSON object per row with the same field names (null where CSV is empty).
std::string render_jsonl(const ScanResult& result);

// Full JSON record for one certificate (preconditions and oracle included);
// what `check` prints.
std::string certificate_json(const Certificate& cert);

// 17-significant-digit rendering used by every CSV/JSON float field.
std::string format_double(double x);

}  // namespace hohlov
