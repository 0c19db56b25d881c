#pragma once

#include <gmpxx.h>

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rayfield {

/// How a transcribed row can be recomputed.
///  rational:        K = F_q(x); some S of the printed size must reproduce it
///  rational_search: same, but the S is only known from a stored witness or a search
///  example:         the worked genus-2 example with its printed S-units
///  curve_search:    the genus-2 example curve with some choice of P and S
///  external:        ground field from the cited literature; listed, never asserted
enum class RowClass { rational, rational_search, example, curve_search, external };

std::string class_name(RowClass c);
RowClass parse_class(const std::string& s);

struct GoldenRow {
    std::string tag;
    long q = 0;
    long g = 0;
    mpz_class N_lower;
    mpz_class N_upper;
    std::optional<long> n;
    long l = 0;
    long s1 = 0;
    mpz_class h_S;
    long g_K = 0;
    RowClass cls = RowClass::external;
    int line = 0;

    std::string key() const;  // "tag q g l |S|"
};

std::vector<GoldenRow> read_golden(std::istream& in);
std::vector<GoldenRow> load_golden(const std::string& path);

/// Witnesses for rational rows: the nonzero elements of S (0 is implied),
/// as element codes, keyed by GoldenRow::key().
using WitnessMap = std::map<std::string, std::vector<std::uint32_t>>;

WitnessMap read_witnesses(std::istream& in);
WitnessMap load_witnesses(const std::string& path);
void write_witnesses(std::ostream& out, const WitnessMap& w);

/// Directory holding the shipped data files (build-time default, overridable
/// by RAYFIELD_DATA_DIR in the environment).
std::string data_dir();

}  // namespace rayfield
