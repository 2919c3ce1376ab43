#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ktrunc/exactalg.hpp"

namespace ktrunc {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verification_failure = 1;
inline constexpr int usage = 2;
}  // namespace exit_code

struct KGroupRow {
    std::uint64_t degree = 1;
    std::vector<std::uint64_t> factors;  // prime powers, ascending
    friend bool operator==(const KGroupRow&, const KGroupRow&) = default;
};

/// Output of `kgroups`: relative K-groups of F_{p^f}[x]/(x^e) by degree.
struct KGroupTable {
    std::uint64_t p = 2;
    std::uint64_t e = 2;
    unsigned f = 1;
    std::vector<KGroupRow> rows;

    friend bool operator==(const KGroupTable&, const KGroupTable&) = default;
};

KGroupRow make_row(std::uint64_t degree, const GroupStructure& g);

/// {"p":..,"e":..,"f":..,"groups":[{"degree":..,"factors":[..]}, ..]}
std::string render_json(const KGroupTable& table);
/// Inverse of render_json. Throws std::invalid_argument on malformed input.
KGroupTable parse_json(const std::string& text);
std::string render_table(const KGroupTable& table);

/// Entry point shared by the executable and the tests. args excludes the
/// program name. Returns one of the exit codes above.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ktrunc
