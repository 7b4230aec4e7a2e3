#include "enriques/fibration.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace enriques {

using json = nlohmann::json;

// ---------------------------------------------------------------- fibers

std::string KodairaFiber::name() const {
  std::string s = twice ? "2" : "";
  switch (kind) {
    case FiberKind::I: return s + "I" + std::to_string(n);
    case FiberKind::Istar: return s + "I" + std::to_string(n) + "*";
    case FiberKind::II: return s + "II";
    case FiberKind::III: return s + "III";
    case FiberKind::IV: return s + "IV";
    case FiberKind::IIstar: return s + "II*";
    case FiberKind::IIIstar: return s + "III*";
    case FiberKind::IVstar: return s + "IV*";
  }
  return s;
}

int KodairaFiber::rank() const {
  switch (kind) {
    case FiberKind::I: return n - 1;
    case FiberKind::Istar: return n + 4;
    case FiberKind::II: return 0;
    case FiberKind::III: return 1;
    case FiberKind::IV: return 2;
    case FiberKind::IIstar: return 8;
    case FiberKind::IIIstar: return 7;
    case FiberKind::IVstar: return 6;
  }
  return 0;
}

KodairaFiber parse_fiber(const std::string& text) {
  std::string t;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c)) && c != '_' && c != '{' && c != '}' && c != '^') t += c;
  KodairaFiber f;
  if (t.rfind("2", 0) == 0) {
    f.twice = true;
    t = t.substr(1);
  }
  const bool star = !t.empty() && t.back() == '*';
  if (star) t.pop_back();
  std::size_t k = 0;
  while (k < t.size() && (t[k] == 'I' || t[k] == 'V')) ++k;
  const std::string roman = t.substr(0, k), digits = t.substr(k);
  if (!digits.empty() && !std::all_of(digits.begin(), digits.end(), ::isdigit))
    throw FibrationError("bad fiber type '" + text + "'");
  if (roman == "I") {
    if (digits.empty()) throw FibrationError("I_n fiber needs a subscript: '" + text + "'");
    f.n = std::stoi(digits);
    f.kind = star ? FiberKind::Istar : FiberKind::I;
    if (!star && f.n < 1) throw FibrationError("I_n requires n >= 1");
    return f;
  }
  if (!digits.empty()) throw FibrationError("bad fiber type '" + text + "'");
  f.n = 0;
  if (roman == "II") f.kind = star ? FiberKind::IIstar : FiberKind::II;
  else if (roman == "III") f.kind = star ? FiberKind::IIIstar : FiberKind::III;
  else if (roman == "IV") f.kind = star ? FiberKind::IVstar : FiberKind::IV;
  else throw FibrationError("bad fiber type '" + text + "'");
  return f;
}

std::string kind_name(FibrationKind k) { return k == FibrationKind::Elliptic ? "elliptic" : "quasi-elliptic"; }

std::string FiberConfiguration::name() const {
  std::string s = "(";
  for (std::size_t i = 0; i < fibers.size(); ++i) s += (i ? ", " : "") + fibers[i].name();
  return s + ")";
}

int FiberConfiguration::rank() const {
  int r = 0;
  for (const auto& f : fibers) r += f.rank();
  return r;
}

int FiberConfiguration::double_count() const {
  return static_cast<int>(std::count_if(fibers.begin(), fibers.end(), [](const KodairaFiber& f) { return f.twice; }));
}

bool FiberConfiguration::same_fibers(const FiberConfiguration& o, bool with_doubles) const {
  auto norm = [&](std::vector<KodairaFiber> v) {
    if (!with_doubles)
      for (auto& f : v) f.twice = false;
    std::sort(v.begin(), v.end());
    return v;
  };
  return norm(fibers) == norm(o.fibers);
}

FiberConfiguration parse_configuration(const std::string& text, std::optional<FibrationKind> kind) {
  FiberConfiguration c;
  std::string lower;
  for (char ch : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  const auto open = text.find('('), close = text.find(')');
  if (open == std::string::npos || close == std::string::npos || close < open)
    throw FibrationError("configuration must be written as (F1, F2, ...)");
  const std::string outside = lower.substr(0, open) + " " + lower.substr(close + 1);
  std::optional<FibrationKind> named;
  if (outside.find("quasi") != std::string::npos || outside.find("qe") != std::string::npos)
    named = FibrationKind::QuasiElliptic;
  else if (outside.find("elliptic") != std::string::npos)
    named = FibrationKind::Elliptic;
  if (kind && named && *kind != *named) throw FibrationError("conflicting fibration kinds");
  c.kind = kind ? *kind : named.value_or(FibrationKind::Elliptic);
  std::stringstream ss(text.substr(open + 1, close - open - 1));
  std::string item;
  while (std::getline(ss, item, ',')) {
    int copies = 1;
    for (const std::string sep : {"\xC3\x97", "x"}) {  // multiplication sign or x
      auto p = item.find(sep);
      if (p == std::string::npos) continue;
      std::string head = item.substr(0, p);
      head.erase(std::remove_if(head.begin(), head.end(), ::isspace), head.end());
      if (head.empty() || !std::all_of(head.begin(), head.end(), ::isdigit)) continue;
      copies = std::stoi(head);
      item = item.substr(p + sep.size());
      break;
    }
    const KodairaFiber f = parse_fiber(item);
    for (int i = 0; i < copies; ++i) c.fibers.push_back(f);
  }
  if (c.fibers.empty()) throw FibrationError("empty fiber configuration");
  return c;
}

std::vector<KodairaFiber> affine_to_fibers(const DiagramClass& t) {
  if (t.kind != DiagramKind::Affine) throw FibrationError("only affine diagrams correspond to fibers");
  std::vector<KodairaFiber> out;
  switch (t.family) {
    case 'A':
      out.push_back({FiberKind::I, t.index + 1, false});
      if (t.index == 1) out.push_back({FiberKind::III, 0, false});
      if (t.index == 2) out.push_back({FiberKind::IV, 0, false});
      break;
    case 'D': out.push_back({FiberKind::Istar, t.index - 4, false}); break;
    case 'E':
      if (t.index == 6) out.push_back({FiberKind::IVstar, 0, false});
      if (t.index == 7) out.push_back({FiberKind::IIIstar, 0, false});
      if (t.index == 8) out.push_back({FiberKind::IIstar, 0, false});
      break;
    default: throw FibrationError("unknown diagram family");
  }
  return out;
}

// ---------------------------------------------------------------- extremality

const std::vector<FiberConfiguration>& extremal_elliptic_list() {
  static const std::vector<FiberConfiguration> list = [] {
    std::vector<FiberConfiguration> v;
    for (const char* s : {"(II*)", "(II*, I1)", "(III*, I2)", "(IV*, IV)", "(IV*, I3, I1)", "(I4*)", "(I1*, I4)",
                          "(I9, I1, I1, I1)", "(I8, III)", "(I6, IV, I2)", "(I5, I5, I1, I1)", "(I3, I3, I3, I3)"})
      v.push_back(parse_configuration(s, FibrationKind::Elliptic));
    return v;
  }();
  return list;
}

const std::vector<FiberConfiguration>& quasi_elliptic_list() {
  static const std::vector<FiberConfiguration> list = [] {
    std::vector<FiberConfiguration> v;
    for (const char* s : {"(II*)", "(III*, III)", "(I4*)", "(I2*, III, III)", "(I0*, I0*)", "(I0*, 4xIII)", "(8xIII)"})
      v.push_back(parse_configuration(s, FibrationKind::QuasiElliptic));
    return v;
  }();
  return list;
}

bool is_extremal(const FiberConfiguration& c) {
  const auto& list = c.kind == FibrationKind::Elliptic ? extremal_elliptic_list() : quasi_elliptic_list();
  return std::any_of(list.begin(), list.end(), [&](const FiberConfiguration& e) { return e.same_fibers(c, false); });
}

// ---------------------------------------------------------------- conductrix

long long ConductrixRecord::self_pairing() const {
  long long s = 0;
  for (const auto& n : nodes) s -= 2LL * n.multiplicity * n.multiplicity;
  for (auto [i, j] : edges) s += 2LL * nodes[i].multiplicity * nodes[j].multiplicity;
  return s;
}

std::string ConductrixRecord::format() const {
  std::ostringstream os;
  os << kind_name(config.kind) << " " << config.name() << ": ";
  if (nodes.empty()) {
    os << "empty conductrix";
  } else {
    os << "components";
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      os << (i ? ", " : " ") << nodes[i].multiplicity << "_" << nodes[i].cover_selfint;
      if (static_cast<int>(i) == cusp) os << " (cusps)";
    }
    os << "; edges";
    for (auto [a, b] : edges) os << " " << a << "-" << b;
  }
  os << "; singularities " << singularities;
  return os.str();
}

ConductrixTable parse_conductrix_table(const std::string& text) {
  ConductrixTable t;
  try {
    const json j = json::parse(text);
    t.version = j.at("version").get<int>();
    if (t.version != 1) throw FibrationError("unsupported conductrix table version " + std::to_string(t.version));
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "elliptic") t.kind = FibrationKind::Elliptic;
    else if (kind == "quasi-elliptic") t.kind = FibrationKind::QuasiElliptic;
    else throw FibrationError("unknown table kind " + kind);
    for (const auto& r : j.at("rows")) {
      ConductrixRecord rec;
      rec.config = parse_configuration(r.at("fibers").get<std::string>(), t.kind);
      for (const auto& n : r.at("components")) rec.nodes.push_back({n.at(0).get<int>(), n.at(1).get<int>()});
      for (const auto& e : r.at("edges")) {
        const int a = e.at(0).get<int>(), b = e.at(1).get<int>();
        if (a < 0 || b < 0 || a >= static_cast<int>(rec.nodes.size()) || b >= static_cast<int>(rec.nodes.size()))
          throw FibrationError("conductrix edge out of range");
        rec.edges.push_back({a, b});
      }
      if (r.contains("cusp") && !r.at("cusp").is_null()) rec.cusp = r.at("cusp").get<int>();
      rec.singularities = r.at("singularities").get<std::string>();
      t.rows.push_back(std::move(rec));
    }
  } catch (const json::exception& e) {
    throw FibrationError(std::string("malformed conductrix table: ") + e.what());
  }
  return t;
}

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FibrationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

ConductrixTable load_conductrix_table(const std::string& path) { return parse_conductrix_table(slurp(path)); }

const ConductrixRecord& conductrix_lookup(const std::vector<ConductrixTable>& tables, const FiberConfiguration& c) {
  for (const auto& t : tables) {
    if (t.kind != c.kind) continue;
    for (const auto& r : t.rows)
      if (r.config.same_fibers(c, true)) return r;
  }
  throw FibrationError("configuration " + kind_name(c.kind) + " " + c.name() + " is not in the conductrix tables");
}

std::vector<TypeFibrations> load_type_fibrations(const std::string& path) {
  std::vector<TypeFibrations> out;
  try {
    const json j = json::parse(slurp(path));
    if (j.at("version").get<int>() != 1) throw FibrationError("unsupported fibration list version");
    for (const auto& t : j.at("types")) {
      TypeFibrations tf;
      tf.type = t.at("type").get<std::string>();
      for (const auto& f : t.at("fibrations")) tf.fibrations.push_back(parse_configuration(f.get<std::string>()));
      out.push_back(std::move(tf));
    }
  } catch (const json::exception& e) {
    throw FibrationError(std::string("malformed fibration list: ") + e.what());
  }
  return out;
}

// ---------------------------------------------------------------- blow-ups

std::vector<BlowupRow> enumerate_blowup_rows(int pa_C, int AC_min) {
  if (pa_C != 0 && pa_C != 1) throw FibrationError("arithmetic genus must be 0 or 1");
  const int C2 = pa_C == 0 ? -2 : 0;
  std::vector<BlowupRow> numeric;
  for (int r = 0; r <= 12; ++r)
    for (int m = 1; m <= 2; ++m) {
      if (r == 0 && m == 2) continue;  // m is meaningless without blow-ups
      if (pa_C == 0 && m == 2) continue;
      for (int s = 1; s <= 2; ++s)
        for (int AC = AC_min; AC <= 2; ++AC) {
          const int twice = (C2 - m * m * r) * s * s;
          if (twice % 2) continue;
          const int Ct2 = twice / 2;
          const int g2 = Ct2 - s * AC + 2;  // 2 p_a(C~)
          if (g2 % 2) continue;
          const int pt = g2 / 2;
          if (pt < 0 || pt > pa_C) continue;
          if (pa_C == 1 && s == 2 && pt == 0) continue;
          numeric.push_back({"", r, r == 0 ? 0 : m, s, AC, Ct2, pt});
        }
    }
  if (pa_C == 0) return numeric;
  // Genus 1: a smooth curve has A.C = 0 and nothing blown up; a node is
  // blown up exactly once with multiplicity 2; a cusp allows every row.
  std::vector<BlowupRow> out;
  for (const char* sing : {"sm", "n", "c"})
    for (auto row : numeric) {
      const std::string s = sing;
      const bool keep = s == "c" || (s == "sm" && row.r == 0 && row.AC == 0) ||
                        (s == "n" && row.r == 1 && row.m == 2 && row.s == 1);
      if (!keep) continue;
      row.sing = s;
      out.push_back(row);
    }
  return out;
}

std::vector<BlowupRow> enumerate_blowup_rows(int pa_C) { return enumerate_blowup_rows(pa_C, pa_C == 0 ? -2 : 0); }

std::string format_blowup_rows(const std::vector<BlowupRow>& rows, int pa_C) {
  std::ostringstream os;
  if (pa_C == 1) os << "Sing  ";
  os << " r  m  s  A.C  C~^2  pa(C~)\n";
  for (const auto& r : rows) {
    char buf[96];
    std::string m = r.m ? std::to_string(r.m) : "-";
    if (pa_C == 1) os << (r.sing + "    ").substr(0, 6);
    std::snprintf(buf, sizeof buf, "%2d %2s %2d %4d %5d %7d\n", r.r, m.c_str(), r.s, r.AC, r.Ctilde2, r.pa_tilde);
    os << buf;
  }
  return os.str();
}

// ---------------------------------------------------------------- canonical cover

std::string verdict_name(CoverVerdict v) {
  switch (v) {
    case CoverVerdict::Classical: return "classical";
    case CoverVerdict::Supersingular: return "supersingular";
    case CoverVerdict::Inconsistent: return "inconsistent";
  }
  return "";
}

CoverAnswer singular_vs_supersingular(const FiberConfiguration& c, int double_fiber_count) {
  if (c.kind != FibrationKind::QuasiElliptic)
    return {CoverVerdict::Inconsistent, "", "only quasi-elliptic fibrations are resolved this way"};
  if (double_fiber_count < 0 || double_fiber_count > 2)
    return {CoverVerdict::Inconsistent, "", "a genus one fibration has one or two double fibers"};
  if (c.double_count() > double_fiber_count)
    return {CoverVerdict::Inconsistent, "", "configuration flags more double fibers than given"};
  if (double_fiber_count == 0)
    return {CoverVerdict::Inconsistent, "", "every genus one fibration on an Enriques surface has a double fiber"};
  if (double_fiber_count == 2)
    return {CoverVerdict::Classical, "4A1", "two double fibers: at least two distinct points are blown up"};
  return {CoverVerdict::Supersingular, "D4", "one double fiber: at most two distinct points are blown up"};
}

}  // namespace enriques
