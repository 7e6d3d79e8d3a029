#pragma once

#include "swdual/page.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace swdual {

/// Imported homotopy table: degrees mod a declared periodicity mapped to
/// a group descriptor, "zero", or (by absence) "unknown".  Absent entries
/// are never treated as zero.
struct TableEntry {
    int degree = 0;
    std::string group;       // "zero" or a descriptor; never "unknown"
    std::string provenance;  // where the fact was imported or computed from
};

class HomotopyTable {
public:
    static HomotopyTable load_json(const std::string& json_text);

    HomotopyTable() = default;
    HomotopyTable(std::string name, int periodicity, std::vector<TableEntry> entries);

    const std::string& name() const { return name_; }
    int periodicity() const { return periodicity_; }
    std::size_t size() const { return entries_.size(); }

    /// Entry at the degree reduced mod the periodicity; nullptr means
    /// "unknown".
    const TableEntry* find(int degree) const;

    /// Degree reduced to [0, periodicity).
    int reduce(int degree) const;

    void add(TableEntry e);

private:
    std::string name_;
    int periodicity_ = 1;
    std::map<int, TableEntry> entries_;
};

/// Derived table for the index-3 wedge decomposition: degree d is the sum
/// of the base table at d, d - 64 and d - 128.  Entries are produced only
/// where all three summands are known; the result is "zero" exactly when
/// all three are.
HomotopyTable wedge_shift_table(const HomotopyTable& base, const std::string& name);

/// One fiber of the duality tower: the filtration-s layer is the
/// suspension by `shift` of the spectrum whose homotopy `table` records.
struct TowerFiber {
    int filtration = 0;
    int shift = 0;
    std::string table;
};

/// The four-stage tower with its 192-periodicity.  Coordinates (s, t) are
/// chosen so that d_r has bidegree (r, r-1); the entry at (s, t) is
/// pi_{t-s} of the filtration-s fiber, i.e. degree t - s - shift_s of its
/// table.
struct TowerSpec {
    std::vector<TowerFiber> fibers;
    int periodicity = 192;

    static TowerSpec standard();
    void validate() const;
    const TowerFiber& fiber(int s) const;
};

/// E1 data at one stem: per filtration the table reference and resolved
/// degree, plus the coordinates of the three potential differentials.
struct TowerE1Entry {
    int s = 0;
    int t = 0;
    std::string table;
    int degree = 0;  // un-reduced table degree t - s - shift_s
    // (r, target s, target t) for each differential leaving this entry.
    std::vector<std::array<int, 3>> targets;
};
std::vector<TowerE1Entry> tower_e1(const TowerSpec& spec, int stem);

/// Collapse check at one E1 location: every differential target must
/// resolve to "zero" in its table.
struct CollapseLookup {
    int r = 0;
    int s = 0;
    int t = 0;
    std::string table;
    int degree = 0;          // reduced degree looked up
    std::string result;      // "zero", "unknown", or a group descriptor
    std::string provenance;
};
struct CollapseVerdict {
    std::string verdict;  // "collapses", "inconclusive", or "obstructed"
    std::vector<CollapseLookup> certificate;
    bool collapses() const { return verdict == "collapses"; }
};
CollapseVerdict check_collapse(const TowerSpec& spec,
                               const std::map<std::string, HomotopyTable>& tables,
                               int s, int t);

/// Ordered suspension-shift bookkeeping whose total composes the final
/// duality shift.
struct ShiftStep {
    std::string description;
    int contribution = 0;
    std::string anchor;
};
struct ShiftLedger {
    std::vector<ShiftStep> steps;
    int total = 0;
    int intermediate_after(std::size_t n) const;
};

/// The three-step shift composition: function-spectrum identification
/// (-3), the degree-24k permanent cycle (+24k), and the cofiber of
/// (psi - 1) (-1).  k = 2 is the proved case and requires the engine to
/// confirm the stem-45 detection that certifies the permanent cycle;
/// other k are reported as hypothetical variants.  Throws if the k = 2
/// prerequisite fails.
ShiftLedger duality_ledger(const SpectralSequence& engine, int k = 2);

/// Registered finite subgroups and the restricted duality shift.  The
/// registry is validated against explicit closure computations in the
/// quaternionic order.
struct RestrictResult {
    std::string subgroup;
    int shift = 44;
    std::string certificate;
    bool flagged = false;  // trivial-group caveat, see note
    std::string note;
};
RestrictResult restrict_shift(const std::string& subgroup);

/// Names accepted by restrict_shift, with their orders.
std::vector<std::pair<std::string, int>> subgroup_registry();

}  // namespace swdual
