#include "goepf/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "goepf/airy.hpp"
#include "goepf/asymptotics.hpp"
#include "goepf/audit.hpp"
#include "goepf/fredholm.hpp"
#include "goepf/kernel.hpp"
#include "goepf/moments.hpp"

namespace goepf {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void escape_json(const std::string& s, std::string& out) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
}

void emit(const Json& j, std::string& out) {
  switch (j.type) {
    case Json::Type::object: {
      out += '{';
      bool first = true;
      for (const auto& [k, v] : j.obj) {
        if (!first) out += ',';
        first = false;
        escape_json(k, out);
        out += ':';
        emit(v, out);
      }
      out += '}';
      break;
    }
    case Json::Type::array: {
      out += '[';
      for (std::size_t i = 0; i < j.arr.size(); ++i) {
        if (i) out += ',';
        emit(j.arr[i], out);
      }
      out += ']';
      break;
    }
    case Json::Type::number:
      out += format_double(j.num);
      break;
    case Json::Type::string:
      escape_json(j.str, out);
      break;
    case Json::Type::boolean:
      out += j.flag ? "true" : "false";
      break;
  }
}

}  // namespace

std::string to_json_string(const Json& j) {
  std::string out;
  emit(j, out);
  out += '\n';
  return out;
}

std::string to_csv_string(const std::vector<std::string>& header,
                          const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

namespace {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

Json table_json(const std::string& command, const Table& t) {
  Json root = Json::object();
  root.obj["command"] = Json::string_value(command);
  Json cols = Json::array();
  for (const auto& c : t.columns) cols.arr.push_back(Json::string_value(c));
  root.obj["columns"] = cols;
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row = Json::array();
    for (double v : r) row.arr.push_back(Json::number(v));
    rows.arr.push_back(row);
  }
  root.obj["rows"] = rows;
  return root;
}

std::string table_csv(const Table& t) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(t.rows.size());
  for (const auto& r : t.rows) {
    std::vector<std::string> row;
    row.reserve(r.size());
    for (double v : r) row.push_back(format_double(v));
    rows.push_back(std::move(row));
  }
  return to_csv_string(t.columns, rows);
}

void write_out(const RunConfig& cfg, const std::string& content) {
  if (cfg.out_path.empty())
    std::cout << content;
  else
    write_text_file(cfg.out_path, content);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

Json fit_json(const LyapunovFit& fit) {
  Json j = Json::object();
  j.obj["slope"] = Json::number(fit.slope);
  j.obj["log_coeff"] = Json::number(fit.log_coeff);
  j.obj["intercept"] = Json::number(fit.intercept);
  j.obj["residual"] = Json::number(fit.residual);
  return j;
}

Json audit_json(const AuditReport& rep) {
  Json root = Json::object();
  root.obj["command"] = Json::string_value("audit");
  root.obj["suite"] = Json::string_value(rep.suite);
  Json checks = Json::array();
  for (const AuditCheck& c : rep.checks) {
    Json j = Json::object();
    j.obj["name"] = Json::string_value(c.name);
    j.obj["fitted_c"] = Json::number(c.fitted_c);
    j.obj["refined_c"] = Json::number(c.refined_c);
    j.obj["drift"] = Json::number(c.drift);
    j.obj["violations"] = Json::number(static_cast<double>(c.violations));
    j.obj["finite"] = Json::boolean(c.finite);
    checks.arr.push_back(j);
  }
  root.obj["checks"] = checks;
  return root;
}

int run_impl(const RunConfig& cfg) {
  const std::string& cmd = cfg.command;
  require(cfg.m >= 1, "m must be positive");
  require(cfg.L_max >= 1 && cfg.L_max <= 3, "lmax must be in [1, 3]");
  require(cfg.window_hi > cfg.window_lo, "window must satisfy lo < hi");
  require(cfg.format == "csv" || cfg.format == "json",
          "format must be csv or json");

  Table t;
  Json extra;  // fit or audit record
  bool has_extra = false;

  if (cmd == "airy") {
    require(!cfg.x_list.empty(), "airy: provide --x values");
    t.columns = {"x", "ai", "ai_prime", "upper_tail", "square_tail"};
    for (double x : cfg.x_list) {
      const AiryValue v = airy(x);
      t.rows.push_back(
          {x, v.ai, v.ai_prime, airy_upper_tail(x), airy_square_tail(x)});
    }
  } else if (cmd == "kernel") {
    require(!cfg.x_list.empty(), "kernel: provide --x values");
    const std::vector<double>& ys =
        cfg.s0_list.empty() ? cfg.x_list : cfg.s0_list;
    t.columns = {"x", "y", "k11", "k12", "k21", "k22"};
    for (double x : cfg.x_list)
      for (double y : ys)
        t.rows.push_back({x, y, k_entry({1, 1}, x, y), k_entry({1, 2}, x, y),
                          k_entry({2, 1}, x, y), k_entry({2, 2}, x, y)});
  } else if (cmd == "correlation") {
    require(!cfg.point_sets.empty(), "correlation: provide --points sets");
    t.columns = {"L", "rho"};
    for (const auto& pts : cfg.point_sets)
      t.rows.push_back({static_cast<double>(pts.size()),
                        correlation(EvaluationPoints{pts})});
  } else if (cmd == "laplace") {
    require(!cfg.s_list.empty() && !cfg.t_list.empty(),
            "laplace: provide --s and --t");
    const FredholmContext ctx = FredholmContext::make(
        cfg.window_lo, cfg.window_hi, cfg.m, cfg.L_max);
    t.columns = {"s", "t", "value"};
    for (double s : cfg.s_list)
      for (double tt : cfg.t_list)
        t.rows.push_back({s, tt, laplace_transform(s, tt, ctx)});
  } else if (cmd == "goe-cdf") {
    require(!cfg.s0_list.empty(), "goe-cdf: provide --s0");
    const FredholmContext ctx = FredholmContext::make(
        cfg.window_lo, cfg.window_hi, cfg.m, cfg.L_max);
    t.columns = {"s0", "F"};
    for (double s0 : cfg.s0_list) t.rows.push_back({s0, goe_cdf(s0, ctx)});
  } else if (cmd == "moments") {
    require(!cfg.p_list.empty() && !cfg.t_list.empty(),
            "moments: provide --p and --t");
    t.columns = {"p",      "t",          "log_leading", "log_abs_b2",
                 "sign_b2", "log_abs_b3", "sign_b3",     "remainder",
                 "log_total"};
    for (double p : cfg.p_list)
      for (double tt : cfg.t_list) {
        const MomentBreakdown b =
            fractional_moment(moment_params(p, tt), cfg.L_max);
        const double inf = std::numeric_limits<double>::infinity();
        double lb2 = -inf, sb2 = 0, lb3 = -inf, sb3 = 0;
        if (b.higher.size() > 0) {
          lb2 = b.higher[0].log_mag;
          sb2 = b.higher[0].sign;
        }
        if (b.higher.size() > 1) {
          lb3 = b.higher[1].log_mag;
          sb3 = b.higher[1].sign;
        }
        t.rows.push_back({p, tt, b.leading.log_mag, lb2, sb2, lb3, sb3,
                          b.remainder, b.total.log_mag});
      }
  } else if (cmd == "lyapunov") {
    require(cfg.p_list.size() == 1, "lyapunov: provide exactly one --p");
    require(cfg.t_list.size() >= 4, "lyapunov: provide >= 4 --t values");
    t.columns = {"t", "log_A"};
    std::vector<std::pair<double, double>> samples;
    for (double tt : cfg.t_list) {
      const LogValue a = leading_term(moment_params(cfg.p_list[0], tt));
      samples.emplace_back(tt, a.log_mag);
      t.rows.push_back({tt, a.log_mag});
    }
    extra = fit_json(lyapunov_fit(samples));
    has_extra = true;
  } else if (cmd == "tail") {
    require(!cfg.s_list.empty() && cfg.t_list.size() == 1,
            "tail: provide --s list and one --t");
    std::vector<double> p_grid = cfg.p_grid;
    if (p_grid.empty())
      for (int i = 1; i <= 8; ++i) p_grid.push_back(0.25 * i);
    auto log_moment = [&](double p, double tt) {
      return fractional_moment(moment_params(p, tt), cfg.L_max)
          .total.log_mag;
    };
    t.columns = {"s", "chernoff", "rate_closed_form"};
    for (double s : cfg.s_list)
      t.rows.push_back({s,
                        chernoff_tail(s, cfg.t_list[0], p_grid, log_moment),
                        rate_function(s).first});
  } else if (cmd == "audit") {
    require(!cfg.suite.empty(), "audit: provide --suite");
    const AuditReport rep = audit_bounds(cfg.suite, cfg.density);
    extra = audit_json(rep);
    has_extra = true;
    t.columns = {"fitted_c", "refined_c", "drift", "violations"};
    for (const AuditCheck& c : rep.checks)
      t.rows.push_back({c.fitted_c, c.refined_c, c.drift,
                        static_cast<double>(c.violations)});
  } else {
    throw std::invalid_argument("unknown command: " + cmd);
  }

  if (cfg.format == "json") {
    Json root = has_extra && cmd == "audit" ? extra : table_json(cmd, t);
    if (has_extra && cmd == "lyapunov") root.obj["fit"] = extra;
    write_out(cfg, to_json_string(root));
  } else {
    write_out(cfg, table_csv(t));
    if (has_extra) {
      const Json root = cmd == "audit" ? extra : [&] {
        Json r = Json::object();
        r.obj["command"] = Json::string_value(cmd);
        r.obj["fit"] = extra;
        return r;
      }();
      if (!cfg.out_path.empty())
        write_text_file(cfg.out_path + ".json", to_json_string(root));
      else
        std::cout << to_json_string(root);
    }
  }
  return 0;
}

}  // namespace

int run(const RunConfig& cfg) {
  try {
    return run_impl(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error (validation): " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error (validation): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error (numeric, command " << cfg.command << "): " << e.what()
              << "\n";
    return 2;
  }
}

}  // namespace goepf
