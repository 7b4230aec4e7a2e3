#pragma once

// Kodaira fiber bookkeeping: affine diagram <-> fiber type, extremality lists
// for rational elliptic / quasi-elliptic fibrations, conductrix tables and
// the blow-up invariants of curves of arithmetic genus <= 1.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "enriques/curvegraph.hpp"

namespace enriques {

struct FibrationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class FiberKind { I, Istar, II, III, IV, IIstar, IIIstar, IVstar };

struct KodairaFiber {
  FiberKind kind = FiberKind::I;
  int n = 1;           // subscript of I_n (n >= 1) and I*_n (n >= 0)
  bool twice = false;  // double fiber, written with a leading 2
  std::string name() const;  // "2I4*", "III", "I8"
  int rank() const;          // number of components minus one
  bool operator==(const KodairaFiber&) const = default;
  auto operator<=>(const KodairaFiber&) const = default;
};

enum class FibrationKind { Elliptic, QuasiElliptic };

struct FiberConfiguration {
  std::vector<KodairaFiber> fibers;
  FibrationKind kind = FibrationKind::Elliptic;
  std::string name() const;  // "(2III*, III)"
  int rank() const;
  int double_count() const;
  // Multiset equality; `with_doubles` false ignores double flags.
  bool same_fibers(const FiberConfiguration& o, bool with_doubles) const;
};

KodairaFiber parse_fiber(const std::string& text);
// "(2III*, III)", "quasi-elliptic (2II*)", "(I2*, 2III, 2III) qe", "(2I0*, 4xIII)".
FiberConfiguration parse_configuration(const std::string& text,
                                       std::optional<FibrationKind> kind = std::nullopt);
std::string kind_name(FibrationKind k);

std::vector<KodairaFiber> affine_to_fibers(const DiagramClass& t);

// Membership in the lists of extremal rational fibrations, ignoring double
// flags; every quasi-elliptic configuration in the list is extremal.
bool is_extremal(const FiberConfiguration& c);
const std::vector<FiberConfiguration>& extremal_elliptic_list();
const std::vector<FiberConfiguration>& quasi_elliptic_list();

struct ConductrixNode {
  int multiplicity = 1;
  int cover_selfint = 0;  // self-intersection of the reduced preimage on the cover
};

struct ConductrixRecord {
  FiberConfiguration config;
  std::vector<ConductrixNode> nodes;
  std::vector<std::pair<int, int>> edges;  // tree of (-2)-curves
  int cusp = -1;                           // curve of cusps (quasi-elliptic rows)
  std::string singularities;               // "4A1", "D4", "12A1", "D4, 8A1", "4A1 or D4"
  bool empty() const { return nodes.empty(); }
  // (sum m_i C_i)^2 with C_i^2 = -2 and C_i.C_j = 1 along the tree.
  long long self_pairing() const;
  std::string format() const;
};

struct ConductrixTable {
  int version = 0;
  FibrationKind kind = FibrationKind::Elliptic;
  std::vector<ConductrixRecord> rows;
};

ConductrixTable parse_conductrix_table(const std::string& text);
ConductrixTable load_conductrix_table(const std::string& path);
// Exact lookup including double flags; throws FibrationError if absent.
const ConductrixRecord& conductrix_lookup(const std::vector<ConductrixTable>& tables, const FiberConfiguration& c);

// Per surface type lists of genus one fibrations, shipped as data.
struct TypeFibrations {
  std::string type;  // "E8", "E7+A1 supersingular", ...
  std::vector<FiberConfiguration> fibrations;
};
std::vector<TypeFibrations> load_type_fibrations(const std::string& path);

struct BlowupRow {
  std::string sing;  // "sm", "n", "c" for genus 1 curves, "" for genus 0
  int r = 0;
  int m = 0;  // 0 when no point is blown up
  int s = 1;
  int AC = 0;
  int Ctilde2 = 0;
  int pa_tilde = 0;
  bool operator==(const BlowupRow&) const = default;
  auto operator<=>(const BlowupRow&) const = default;
};

// Sweep r in [0,12], m in {1,2}, s in {1,2}, AC in [AC_min, 2] and keep the
// rows allowed by the self-intersection and genus formulas. A smooth rational
// curve only has points of multiplicity 1; on a genus 1 curve a degree 2
// cover of the cuspidal cubic by a rational curve is excluded.
std::vector<BlowupRow> enumerate_blowup_rows(int pa_C, int AC_min);
// A.C >= -2 for rational curves; a genus 1 curve with C^2 = 0 is nef, so A.C >= 0.
std::vector<BlowupRow> enumerate_blowup_rows(int pa_C);
std::string format_blowup_rows(const std::vector<BlowupRow>& rows, int pa_C);

enum class CoverVerdict { Classical, Supersingular, Inconsistent };
struct CoverAnswer {
  CoverVerdict verdict = CoverVerdict::Inconsistent;
  std::string singularities;  // "4A1", "D4" or ""
  std::string reason;
};
std::string verdict_name(CoverVerdict v);
// Quasi-elliptic fibrations only: two double fibers force 4A1 (classical),
// one double fiber leaves room for a D4 point (supersingular).
CoverAnswer singular_vs_supersingular(const FiberConfiguration& c, int double_fiber_count);

}  // namespace enriques
