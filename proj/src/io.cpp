#include "warp/io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <vector>

#include "json.hpp"
#include "warp/errors.hpp"

namespace warp::io {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// Minimal streaming writer for the fixed schemas below; keeps number
// formatting under our control.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& out) : out_(out) {}

  void begin_object() { open('{'); }
  void end_object() { close('}'); }
  void begin_array() { open('['); }
  void end_array() { close(']'); }

  void key(const std::string& k) {
    separator();
    string(k);
    out_ << ':';
    after_key_ = true;
  }

  void number(double v) {
    separator();
    // JSON has no NaN/Inf
    if (std::isfinite(v)) {
      out_ << format_number(v);
    } else {
      out_ << "null";
    }
  }
  void integer(long v) {
    separator();
    out_ << v;
  }
  void boolean(bool v) {
    separator();
    out_ << (v ? "true" : "false");
  }
  void text(const std::string& s) {
    separator();
    string(s);
  }

 private:
  void open(char c) {
    separator();
    out_ << c;
    first_.push_back(true);
  }
  void close(char c) {
    first_.pop_back();
    out_ << c;
  }
  void separator() {
    if (after_key_) {
      after_key_ = false;
      return;
    }
    if (!first_.empty()) {
      if (!first_.back()) out_ << ',';
      first_.back() = false;
    }
  }
  void string(const std::string& s) {
    out_ << '"';
    for (const char ch : s) {
      switch (ch) {
        case '"': out_ << "\\\""; break;
        case '\\': out_ << "\\\\"; break;
        case '\n': out_ << "\\n"; break;
        default: out_ << ch;
      }
    }
    out_ << '"';
  }

  std::ostream& out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

void params_object(JsonWriter& w, const ModelParams& p) {
  w.key("params");
  w.begin_object();
  w.key("n");
  w.integer(p.n);
  w.key("R");
  w.number(p.R);
  w.key("Rt");
  w.number(p.Rt);
  w.end_object();
}

void sup_norm(JsonWriter& w, const char* name, const SupNorm& s) {
  w.key(name);
  w.begin_object();
  w.key("value");
  w.number(s.value);
  w.key("index");
  w.integer(static_cast<long>(s.index));
  w.end_object();
}

void conformal_object(JsonWriter& w, const char* name, const ConformalReport& r) {
  w.key(name);
  w.begin_object();
  w.key("warping");
  w.text(to_string(r.warping));
  w.key("tt_residual");
  w.number(r.tt_residual);
  w.key("fiber_residual");
  w.number(r.fiber_residual);
  w.key("tt_scale");
  w.number(r.tt_scale);
  w.key("fiber_scale");
  w.number(r.fiber_scale);
  w.key("tol");
  w.number(r.tol);
  w.key("tt_pass");
  w.boolean(r.tt_pass);
  w.key("pass");
  w.boolean(r.pass);
  w.end_object();
}

}  // namespace

void write_period_csv(std::ostream& out, std::span<const ScanEntry> scan) {
  out << "c,a,b,T,amplitude\n";
  for (const auto& e : scan) {
    if (!e.ok) continue;
    const auto& o = e.orbit;
    out << format_number(o.c) << ',' << format_number(o.a) << ',' << format_number(o.b) << ','
        << format_number(o.T) << ',' << format_number(o.b - o.a) << '\n';
  }
}

void write_diagram_csv(std::ostream& out, const BifurcationDiagram& diag) {
  out << "T,k,c,amplitude,max_f,min_f\n";
  for (const auto& r : diag.rows) {
    out << format_number(r.T) << ',' << r.k << ',' << format_number(r.c) << ','
        << format_number(r.amplitude) << ',' << format_number(r.max_f) << ','
        << format_number(r.min_f) << '\n';
  }
}

void write_branch_points_csv(std::ostream& out, const BifurcationDiagram& diag) {
  out << "k,T\n";
  for (const auto& b : diag.branch_points) out << b.k << ',' << format_number(b.T) << '\n';
}

void write_profile_json(std::ostream& out, const SolutionProfile& prof) {
  JsonWriter w(out);
  w.begin_object();
  params_object(w, prof.params);
  w.key("T");
  w.number(prof.T);
  w.key("c");
  w.number(prof.c);
  w.key("residual_sup");
  w.number(prof.residual_sup);
  w.key("closure_error");
  w.number(prof.closure_error);
  w.key("root_count");
  w.integer(prof.root_count);
  w.key("samples");
  w.begin_array();
  for (const auto& s : prof.samples) {
    w.begin_array();
    for (const double v : {s.t, s.x, s.v, s.f, s.fp, s.fpp}) w.number(v);
    w.end_array();
  }
  w.end_array();
  w.end_object();
  out << '\n';
}

SolutionProfile read_profile_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
    SolutionProfile prof;
    const auto& p = j.at("params");
    prof.params.n = p.at("n").get<int>();
    prof.params.R = p.at("R").get<double>();
    prof.params.Rt = p.at("Rt").get<double>();
    prof.params.validate();
    prof.T = j.at("T").get<double>();
    prof.c = j.at("c").get<double>();
    prof.residual_sup = j.value("residual_sup", 0.0);
    prof.closure_error = j.value("closure_error", 0.0);
    prof.root_count = j.value("root_count", 1);
    for (const auto& row : j.at("samples")) {
      if (row.size() != 6) throw DomainError("profile sample must have 6 entries");
      prof.samples.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>(),
                              row[3].get<double>(), row[4].get<double>(), row[5].get<double>()});
    }
    return prof;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed profile JSON: ") + e.what());
  }
}

void write_threshold_json(std::ostream& out, const ModelParams& p) {
  const auto d = derive_constants(p);
  JsonWriter w(out);
  w.begin_object();
  w.key("n");
  w.integer(p.n);
  w.key("R");
  w.number(p.R);
  w.key("Rt");
  w.number(p.Rt);
  w.key("f_star");
  w.number(d.f_star);
  w.key("x_star");
  w.number(d.x_star);
  w.key("T0");
  w.number(d.T0);
  w.key("c_min");
  w.number(d.c_min);
  w.key("c_crit");
  w.number(d.c_crit);
  w.end_object();
  out << '\n';
}

void write_threshold_text(std::ostream& out, const ModelParams& p) {
  const auto d = derive_constants(p);
  out << "n = " << p.n << '\n'
      << "R = " << format_number(p.R) << '\n'
      << "Rt = " << format_number(p.Rt) << '\n'
      << "f_star = " << format_number(d.f_star) << '\n'
      << "x_star = " << format_number(d.x_star) << '\n'
      << "T0 = " << format_number(d.T0) << '\n'
      << "c_min = " << format_number(d.c_min) << '\n'
      << "c_crit = " << format_number(d.c_crit) << '\n';
}

void write_verify_json(std::ostream& out, const CurvatureReport& curv, const AuditReport& audit) {
  JsonWriter w(out);
  w.begin_object();
  w.key("curvature");
  w.begin_object();
  w.key("max_dev");
  w.number(curv.max_dev);
  w.key("tol");
  w.number(curv.tol);
  w.key("pass");
  w.boolean(curv.pass);
  w.key("convention");
  w.text(to_string(Warping::FSquared));
  w.key("convention_consistent");
  w.boolean(curv.convention_consistent);
  conformal_object(w, "conformal_f2", curv.conformal_f2);
  conformal_object(w, "conformal_f", curv.conformal_f);
  w.key("Rt_profile");
  w.begin_array();
  for (const auto& [t, rt] : curv.Rt_profile) {
    w.begin_array();
    w.number(t);
    w.number(rt);
    w.end_array();
  }
  w.end_array();
  w.end_object();
  w.key("audit");
  w.begin_object();
  sup_norm(w, "chain_rule", audit.chain_rule);
  sup_norm(w, "stored_jet", audit.stored_jet);
  sup_norm(w, "finite_diff", audit.finite_diff);
  sup_norm(w, "energy", audit.energy);
  w.key("flags");
  w.begin_array();
  for (const auto& f : audit.flags) w.text(f);
  w.end_array();
  w.key("pass");
  w.boolean(audit.pass);
  w.end_object();
  w.end_object();
  out << '\n';
}

}  // namespace warp::io
