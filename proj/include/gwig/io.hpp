#pragma once

// File emission: CSV with 17 significant digits, a dependency-free SVG
// rendering of the particle curves, and key = value reports. All writes are
// whole-file atomic (write temp, then rename).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gwig/linalg.hpp"
#include "gwig/verifier.hpp"

namespace gwig {

inline std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string fmt6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

inline void atomic_write_file(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << content;
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw std::runtime_error("rename failed for " + target.string() + ": " + ec.message());
}

/// Header row plus numeric rows, 17 significant digits, '\n' terminated.
inline std::string render_csv(const std::vector<std::string>& header,
                              const std::vector<Vec>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out += header[i];
    out += (i + 1 < header.size()) ? "," : "\n";
  }
  for (const Vec& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("render_csv: row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += fmt17(row[i]);
      out += (i + 1 < row.size()) ? "," : "\n";
    }
  }
  return out;
}

inline std::string render_report(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string out;
  for (const auto& [k, v] : kv) {
    out += k;
    out += " = ";
    out += v;
    out += "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG rendering of the particle figure
// ---------------------------------------------------------------------------

namespace svgdetail {

struct Panel {
  double px, py, pw, ph;       // screen rect
  double x0, x1, y0, y1;       // data window
  bool logx = false, logy = false;

  double tx(double x) const {
    const double u = logx ? std::log10(x) : x;
    const double u0 = logx ? std::log10(x0) : x0;
    const double u1 = logx ? std::log10(x1) : x1;
    return px + (u - u0) / (u1 - u0) * pw;
  }
  double ty(double y) const {
    const double v = logy ? std::log10(y) : y;
    const double v0 = logy ? std::log10(y0) : y0;
    const double v1 = logy ? std::log10(y1) : y1;
    return py + ph - (v - v0) / (v1 - v0) * ph;
  }
};

inline std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

inline void polyline(std::string& out, const Panel& p, const Vec& xs, const Vec& ys,
                     const std::string& color, bool dashed = false) {
  out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.3\"";
  if (dashed) out += " stroke-dasharray=\"5,4\"";
  out += " points=\"";
  bool pen_down = false;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i], y = ys[i];
    if (!(x >= p.x0 && x <= p.x1) || !std::isfinite(y)) {
      pen_down = false;
      continue;
    }
    double yc = y;
    if (p.logy) {
      if (!(yc > 0.0)) {
        pen_down = false;
        continue;
      }
      yc = std::min(std::max(yc, p.y0), p.y1);
    } else {
      yc = std::min(std::max(yc, p.y0), p.y1);
    }
    (void)pen_down;
    out += coord(p.tx(x)) + "," + coord(p.ty(yc)) + " ";
    pen_down = true;
  }
  out += "\"/>\n";
}

inline void frame(std::string& out, const Panel& p, const std::string& title) {
  out += "<rect x=\"" + coord(p.px) + "\" y=\"" + coord(p.py) + "\" width=\"" +
         coord(p.pw) + "\" height=\"" + coord(p.ph) +
         "\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n";
  out += "<text x=\"" + coord(p.px + p.pw / 2) + "\" y=\"" + coord(p.py - 8) +
         "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#111\">" + title + "</text>\n";
}

inline void text(std::string& out, double x, double y, const std::string& s,
                 const std::string& color = "#111", int size = 11) {
  out += "<text x=\"" + coord(x) + "\" y=\"" + coord(y) + "\" font-size=\"" +
         std::to_string(size) + "\" fill=\"" + color + "\">" + s + "</text>\n";
}

}  // namespace svgdetail

/// Two-panel figure: linear view of the core region and a log-log view with
/// the 1/r and 1/r^2 references.
inline std::string render_particle_svg(const Vec& r, const Vec& phi, const Vec& E,
                                       const Vec& rho) {
  using namespace svgdetail;
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"980\" height=\"430\" "
       "viewBox=\"0 0 980 430\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"980\" height=\"430\" fill=\"white\"/>\n";

  Panel lin{60, 40, 380, 330, 0.0, 10.0, -0.6, 1.6, false, false};
  frame(s, lin, "potential, field, charge density (linear)");
  polyline(s, lin, r, phi, "#1f77b4");
  polyline(s, lin, r, E, "#d62728");
  polyline(s, lin, r, rho, "#2ca02c");
  for (double gx : {0.0, 2.0, 4.0, 6.0, 8.0, 10.0})
    text(s, lin.tx(gx) - 6, lin.py + lin.ph + 14, fmt6(gx), "#333");
  for (double gy : {-0.5, 0.0, 0.5, 1.0, 1.5})
    text(s, lin.px - 38, lin.ty(gy) + 4, fmt6(gy), "#333");
  text(s, lin.px + lin.pw / 2 - 30, 415, "r / a");

  Panel lg{560, 40, 380, 330, 0.05, r.empty() ? 20.0 : r.back(), 1e-8, 10.0, true, true};
  frame(s, lg, "far field vs 1/r and 1/r^2 (log-log)");
  Vec inv_r(r.size()), inv_r2(r.size()), abs_phi(r.size()), abs_E(r.size()), abs_rho(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    inv_r[i] = 1.0 / r[i];
    inv_r2[i] = 1.0 / (r[i] * r[i]);
    abs_phi[i] = std::fabs(phi[i]);
    abs_E[i] = std::fabs(E[i]);
    abs_rho[i] = std::fabs(rho[i]);
  }
  polyline(s, lg, r, inv_r, "#888", true);
  polyline(s, lg, r, inv_r2, "#bbb", true);
  polyline(s, lg, r, abs_phi, "#1f77b4");
  polyline(s, lg, r, abs_E, "#d62728");
  polyline(s, lg, r, abs_rho, "#2ca02c");
  for (double gx : {0.1, 1.0, 10.0})
    text(s, lg.tx(gx) - 6, lg.py + lg.ph + 14, fmt6(gx), "#333");
  for (double gy : {1e-8, 1e-6, 1e-4, 1e-2, 1.0})
    text(s, lg.px - 46, lg.ty(gy) + 4, fmt6(gy), "#333");
  text(s, lg.px + lg.pw / 2 - 30, 415, "r / a");

  text(s, 60, 395, "phi", "#1f77b4", 12);
  text(s, 95, 395, "E", "#d62728", 12);
  text(s, 120, 395, "rho", "#2ca02c", 12);
  text(s, 155, 395, "1/r, 1/r^2 (dashed)", "#888", 12);
  s += "</svg>\n";
  return s;
}

/// Report serialization for a verification run: stable key = value lines,
/// no timestamps, bit-identical for identical inputs.
inline std::string render_verification_report(
    const VerificationReport& rep,
    const std::vector<std::pair<std::string, std::string>>& header) {
  std::vector<std::pair<std::string, std::string>> kv = header;
  std::size_t failed = 0;
  for (const auto& c : rep.checks) {
    kv.emplace_back("check." + c.name + ".measured", fmt17(c.measured));
    kv.emplace_back("check." + c.name + ".tolerance", fmt17(c.tolerance));
    kv.emplace_back("check." + c.name + ".pass", c.pass ? "true" : "false");
    if (!c.notes.empty()) kv.emplace_back("check." + c.name + ".notes", c.notes);
    if (!c.pass) ++failed;
  }
  kv.emplace_back("summary.checks", std::to_string(rep.checks.size()));
  kv.emplace_back("summary.failed", std::to_string(failed));
  kv.emplace_back("overall.pass", rep.overall() ? "true" : "false");
  return render_report(kv);
}

}  // namespace gwig
