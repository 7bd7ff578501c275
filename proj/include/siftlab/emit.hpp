#pragma once

// Machine-readable output. CSV is a long format with the fixed header
//   N,m,w,metric,value,predicted,rel_err,flag
// and JSON mirrors the report field names; real numbers carry 12 significant
// digits, counts stay integers.

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "siftlab/goldbach_analysis.hpp"

namespace siftlab {

enum class OutputFormat { csv, json };

struct NumValue {
    bool is_int = false;
    u64 i = 0;
    double d = 0.0;

    static NumValue of(u64 v) { return {true, v, 0.0}; }
    static NumValue of(double v) { return {false, 0, v}; }
};

inline std::string fmt_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string fmt_num(const NumValue& v) {
    return v.is_int ? std::to_string(v.i) : fmt_real(v.d);
}

// One CSV data row; absent fields stay blank.
struct Row {
    std::string metric;
    std::optional<u64> N;
    std::optional<double> m, w;
    NumValue value;
    std::optional<NumValue> predicted;
    std::string flag;
};

inline std::string csv_header() { return "N,m,w,metric,value,predicted,rel_err,flag\n"; }

inline std::string csv_row(const Row& r) {
    std::ostringstream os;
    if (r.N) os << *r.N;
    os << ',';
    if (r.m) os << fmt_real(*r.m);
    os << ',';
    if (r.w) os << fmt_real(*r.w);
    os << ',' << r.metric << ',' << fmt_num(r.value) << ',';
    double rel_err = std::numeric_limits<double>::quiet_NaN();
    if (r.predicted) {
        os << fmt_num(*r.predicted);
        double p = r.predicted->is_int ? static_cast<double>(r.predicted->i) : r.predicted->d;
        double v = r.value.is_int ? static_cast<double>(r.value.i) : r.value.d;
        if (p != 0.0 && std::isfinite(p)) rel_err = (v - p) / std::fabs(p);
    }
    os << ',';
    if (r.predicted && std::isfinite(rel_err)) os << fmt_real(rel_err);
    os << ',' << r.flag << '\n';
    return os.str();
}

inline std::string emit_rows_csv(const std::vector<Row>& rows,
                                 std::optional<std::string> timestamp = {}) {
    std::string out;
    if (timestamp) out += "# generated_at=" + *timestamp + "\n";
    out += csv_header();
    for (const auto& r : rows) out += csv_row(r);
    return out;
}

// Minimal JSON writer; keys in this project are plain identifiers.
class JsonWriter {
public:
    JsonWriter& begin() { raw_ += '{'; first_ = true; return *this; }
    JsonWriter& end() { raw_ += '}'; return *this; }

    JsonWriter& key(const std::string& k) {
        if (!first_) raw_ += ',';
        first_ = false;
        raw_ += '"';
        raw_ += k;
        raw_ += "\":";
        return *this;
    }

    JsonWriter& value_int(u64 v) { raw_ += std::to_string(v); return *this; }
    JsonWriter& value_real(double v) {
        if (std::isfinite(v)) raw_ += fmt_real(v);
        else raw_ += "null";
        return *this;
    }
    JsonWriter& value_str(const std::string& s) { raw_ += '"' + s + '"'; return *this; }
    JsonWriter& value_bool(bool b) { raw_ += b ? "true" : "false"; return *this; }
    JsonWriter& value_raw(const std::string& s) { raw_ += s; return *this; }

    const std::string& str() const { return raw_; }

private:
    std::string raw_;
    bool first_ = true;
};

// AnalysisReport serialized one-to-one with its field names.
inline std::string emit_analysis_json(const AnalysisReport& rep,
                                      std::optional<std::string> timestamp = {}) {
    JsonWriter w;
    w.begin();
    if (timestamp) w.key("generated_at").value_str(*timestamp);
    w.key("N").value_int(rep.N);
    w.key("m").value_real(rep.m);
    w.key("w").value_real(rep.w);
    w.key("goldbach_actual").value_int(rep.goldbach_actual);
    w.key("predicted_crude").value_real(rep.predicted_crude);
    w.key("predicted_refined").value_real(rep.predicted_refined);
    w.key("alpha_hat").value_real(rep.alpha_hat);

    JsonWriter per_k;
    per_k.begin();
    for (auto& [k, rho] : rep.per_k_ratios) per_k.key(std::to_string(k)).value_real(rho);
    per_k.end();
    w.key("per_k_ratios").value_raw(per_k.str());

    JsonWriter iv;
    iv.begin();
    if (rep.left_defined) iv.key("left").value_real(rep.rho_left);
    else iv.key("left").value_raw("null");
    if (rep.right_defined) iv.key("right").value_real(rep.rho_right);
    else iv.key("right").value_raw("null");
    iv.end();
    w.key("interval_ratios").value_raw(iv.str());

    JsonWriter dmn;
    dmn.begin();
    dmn.key("m").value_real(rep.dmn.m);
    dmn.key("actual").value_int(rep.dmn.actual);
    dmn.key("predicted").value_real(rep.dmn.predicted_alpha1);
    dmn.key("predicted_alpha_hat").value_real(rep.dmn.predicted_alphahat);
    dmn.end();
    w.key("dmn").value_raw(dmn.str());

    JsonWriter dn2;
    dn2.begin();
    if (rep.dn2_computed) dn2.key("expectation").value_real(rep.dn2_expectation);
    else dn2.key("expectation").value_raw("null");
    dn2.key("asymptotic").value_real(rep.dn2_asymptotic);
    dn2.end();
    w.key("dn2").value_raw(dn2.str());

    JsonWriter twin;
    twin.begin();
    twin.key("x").value_int(rep.twin.x);
    twin.key("b").value_int(rep.twin.b);
    twin.key("actual").value_int(rep.twin.actual);
    twin.key("predicted").value_real(rep.twin.predicted);
    twin.end();
    w.key("twin").value_raw(twin.str());

    w.end();
    return w.str() + "\n";
}

inline std::vector<Row> analysis_rows(const AnalysisReport& rep) {
    std::vector<Row> rows;
    u64 N = rep.N;
    double m = rep.m, w = rep.w;
    rows.push_back({"goldbach_actual", N, m, w, NumValue::of(rep.goldbach_actual),
                    NumValue::of(rep.predicted_crude), ""});
    rows.push_back({"goldbach_refined", N, m, w, NumValue::of(rep.predicted_refined),
                    NumValue::of(static_cast<double>(rep.goldbach_actual)), ""});
    rows.push_back({"alpha_hat", N, m, w, NumValue::of(rep.alpha_hat), {}, ""});
    for (auto& [k, rho] : rep.per_k_ratios)
        rows.push_back({"rho_" + std::to_string(k), N, m, w, NumValue::of(rho), {}, ""});
    if (rep.left_defined)
        rows.push_back({"rho_left", N, m, w, NumValue::of(rep.rho_left), {}, ""});
    if (rep.right_defined)
        rows.push_back({"rho_right", N, m, w, NumValue::of(rep.rho_right), {}, ""});
    rows.push_back({"dmn_actual", N, m, w, NumValue::of(rep.dmn.actual),
                    NumValue::of(rep.dmn.predicted_alpha1),
                    rep.dmn.empty_range ? "empty_range" : ""});
    if (rep.dn2_computed)
        rows.push_back({"dn2_expectation", N, m, w, NumValue::of(rep.dn2_expectation),
                        NumValue::of(static_cast<double>(rep.goldbach_actual)), ""});
    rows.push_back({"dn2_asymptotic", N, m, w, NumValue::of(rep.dn2_asymptotic),
                    NumValue::of(rep.predicted_crude), ""});
    rows.push_back({"twin_actual", rep.twin.x, {}, {}, NumValue::of(rep.twin.actual),
                    NumValue::of(rep.twin.predicted), "b=" + std::to_string(rep.twin.b)});
    return rows;
}

inline std::string emit_analysis(const AnalysisReport& rep, OutputFormat fmt,
                                 std::optional<std::string> timestamp = {}) {
    if (fmt == OutputFormat::json) return emit_analysis_json(rep, timestamp);
    return emit_rows_csv(analysis_rows(rep), timestamp);
}

} // namespace siftlab
