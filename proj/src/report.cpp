#include "torusnielsen/report.hpp"

#include <cstdio>
#include <map>
#include <sstream>

namespace tn::report {
namespace {

using nlohmann::json;

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

void line(std::ostringstream& out, const std::string& key, const std::string& value) {
  out << pad(key, 11) << value << "\n";
}

std::string sizes_line(const std::map<Int, Int>& by_size) {
  std::string s;
  for (const auto& [size, count] : by_size) {
    if (!s.empty()) s += "  ";
    s += size.get_str() + ":" + count.get_str();
  }
  return s.empty() ? "-" : s;
}

std::string r_text(const std::optional<ExtNat>& r) {
  return r ? r->to_string() : "undetermined";
}

}  // namespace

json to_json(const Int& x) {
  if (auto v = to_int64(x)) return *v;
  return x.get_str();
}

json to_json(const ExtNat& x) {
  if (x.is_infinite()) return "inf";
  return to_json(x.value());
}

json to_json(const orbits::OrbitStats& st) {
  json j;
  j["nu_odd"] = to_json(st.nu_odd);
  j["nu_even"] = to_json(st.nu_even);
  j["nu_inf"] = to_json(st.nu_inf);
  j["complete"] = st.complete;
  j["note"] = st.note;
  json sizes = json::object();
  for (const auto& [size, count] : st.by_size) sizes[size.get_str()] = to_json(count);
  j["by_size"] = sizes;
  json orbits = json::array();
  for (const auto& o : st.orbits) {
    json rep = json::array();
    for (const auto& c : o.representative.coords) rep.push_back(to_json(c));
    orbits.push_back({{"representative", rep}, {"size", to_json(o.size)}});
  }
  j["orbits"] = orbits;
  j["orbits_truncated"] = st.orbits_truncated;
  return j;
}

json to_json(const NielsenReport& r) {
  json j;
  j["case"] = case_label_name(r.case_label);
  j["N"] = to_json(r.N);
  j["MCC"] = to_json(r.MCC);
  j["MC"] = to_json(r.MC);
  j["R"] = r.R_count ? to_json(*r.R_count) : json("undetermined");
  j["loose"] = r.loose;
  j["free_rank"] = r.free_rank;
  j["nu_odd"] = to_json(r.stats.nu_odd);
  j["nu_even"] = to_json(r.stats.nu_even);
  j["nu_inf"] = to_json(r.stats.nu_inf);
  j["stats_complete"] = r.stats.complete;
  json sizes = json::object();
  for (const auto& [size, count] : r.stats.by_size) sizes[size.get_str()] = to_json(count);
  j["by_size"] = sizes;
  json values = json::object();
  for (const auto& [k, v] : r.witness.values) values[k] = v;
  j["witness"] = {{"branch", r.witness.branch}, {"values", values}};
  return j;
}

json to_json(const FixedPointReport& r) {
  json j = to_json(r.report);
  if (r.narrative) {
    const auto& n = *r.narrative;
    json p;
    p["eigenspace_dim"] = n.eigenspace_dim;
    if (n.a) p["a"] = *n.a;
    if (n.det_A) p["det_A"] = *n.det_A;
    if (n.q) p["q"] = to_json(*n.q);
    if (n.v1) p["v1"] = to_json(*n.v1);
    if (n.v2) p["v2"] = to_json(*n.v2);
    if (n.r) p["r"] = to_json(*n.r);
    p["branch"] = n.branch;
    p["MCC"] = to_json(n.MCC);
    p["MC"] = to_json(n.MC);
    j["plane_case"] = p;
  }
  return j;
}

json to_json(const oracle::GaussTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"k", to_json(r.k)},
                    {"l", to_json(r.l)},
                    {"same_parity", r.same_parity},
                    {"nu1", to_json(r.nu1)},
                    {"nu2", to_json(r.nu2)},
                    {"nu4", to_json(r.nu4)},
                    {"nu", to_json(r.nu)},
                    {"MCC", to_json(r.mcc)},
                    {"ok", r.ok}});
  return {{"rows", rows}, {"mismatches", t.mismatches}};
}

std::string render_text(const orbits::OrbitStats& st) {
  std::ostringstream out;
  line(out, "nu_odd", st.nu_odd.to_string());
  line(out, "nu_even", st.nu_even.to_string());
  line(out, "nu_inf", st.nu_inf.to_string());
  line(out, "complete", st.complete ? "yes" : "no");
  if (!st.note.empty()) line(out, "note", st.note);
  line(out, "sizes", sizes_line(st.by_size));
  if (!st.orbits.empty()) {
    out << "orbits (representative: size)\n";
    for (const auto& o : st.orbits)
      out << "  " << to_string(o.representative.coords) << ": " << o.size.get_str() << "\n";
    if (st.orbits_truncated) out << "  ...\n";
  }
  return out.str();
}

std::string render_text(const NielsenReport& r) {
  std::ostringstream out;
  line(out, "case", case_label_name(r.case_label));
  line(out, "N", r.N.get_str());
  line(out, "MCC", r.MCC.get_str());
  line(out, "MC", r.MC.to_string());
  line(out, "R", r_text(r.R_count));
  line(out, "loose", r.loose ? "true" : "false");
  line(out, "free_rank", std::to_string(r.free_rank));
  line(out, "nu_odd", r.stats.nu_odd.to_string());
  line(out, "nu_even", r.stats.nu_even.to_string());
  line(out, "nu_inf", r.stats.nu_inf.to_string());
  line(out, "stats", (r.stats.complete ? "complete" : "incomplete") +
                         (r.stats.note.empty() ? "" : " (" + r.stats.note + ")"));
  if (!r.stats.by_size.empty()) line(out, "sizes", sizes_line(r.stats.by_size));
  line(out, "witness", r.witness.branch);
  for (const auto& [k, v] : r.witness.values) out << "  " << pad(k, 13) << v << "\n";
  return out.str();
}

std::string render_text(const FixedPointReport& r) {
  std::string s = render_text(r.report);
  if (!r.narrative) return s;
  const auto& n = *r.narrative;
  std::ostringstream out;
  out << "plane case (+1 eigenspace of dimension " << n.eigenspace_dim << ")\n";
  out << "  " << pad("branch", 13) << n.branch << "\n";
  if (n.a) out << "  " << pad("a", 13) << *n.a << "\n";
  if (n.det_A) out << "  " << pad("det A", 13) << *n.det_A << "\n";
  if (n.q) out << "  " << pad("q", 13) << n.q->get_str() << "\n";
  if (n.v1) out << "  " << pad("v1", 13) << n.v1->get_str() << "\n";
  if (n.v2) out << "  " << pad("v2", 13) << n.v2->get_str() << "\n";
  if (n.r) out << "  " << pad("r", 13) << n.r->get_str() << "\n";
  out << "  " << pad("MCC", 13) << n.MCC.get_str() << "\n";
  out << "  " << pad("MC", 13) << n.MC.to_string() << "\n";
  out << "  " << pad("agrees", 13) << "yes\n";
  return s + out.str();
}

std::string render_text(const oracle::GaussTable& t) {
  struct Agg {
    const oracle::GaussRow* first = nullptr;
    std::size_t pairs = 0;
    bool ok = true;
  };
  std::map<std::pair<Int, bool>, Agg> groups;
  for (const auto& r : t.rows) {
    auto& g = groups[{r.k * r.k + r.l * r.l, !r.same_parity}];
    if (!g.first) g.first = &r;
    ++g.pairs;
    g.ok = g.ok && r.ok;
  }
  std::ostringstream out;
  out << "k^2+l^2  parity      nu1, nu2, nu4; nu   MCC   pairs  status\n";
  for (const auto& [key, g] : groups) {
    const auto& r = *g.first;
    char buf[160];
    const std::string counts = key.first == 0
                                   ? std::string("-")
                                   : r.nu1.get_str() + ", " + r.nu2.get_str() + ", " +
                                         r.nu4.get_str() + "; " + r.nu.get_str();
    std::snprintf(buf, sizeof buf, "%7s  %-10s  %-18s %4s  %6zu  %s\n",
                  key.first.get_str().c_str(), r.same_parity ? "v1=v2(2)" : "v1!=v2(2)",
                  counts.c_str(), r.mcc.get_str().c_str(), g.pairs,
                  g.ok ? "ok" : "MISMATCH");
    out << buf;
  }
  for (const auto& r : t.rows)
    if (!r.ok)
      out << "mismatch at k=" << r.k.get_str() << " l=" << r.l.get_str()
          << (r.same_parity ? " same" : " opposite") << " parity: " << r.problem << "\n";
  out << "rows checked: " << t.rows.size() << ", mismatches: " << t.mismatches << "\n";
  return out.str();
}

}  // namespace tn::report
