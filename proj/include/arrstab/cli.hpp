/**
 * Job configuration, the family catalog, the on-disk lattice cache, and the
 * runner that turns a configuration into report files.
 */

#ifndef ARRSTAB_CLI_HPP
#define ARRSTAB_CLI_HPP

#include <filesystem>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "arrstab/arrangement.hpp"
#include "arrstab/characters.hpp"

namespace arrstab {

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct JobConfig
{
    std::string family_name;      // catalog entry or "custom"
    ArrangementSpec spec;
    MultiIndex level_min;
    MultiIndex level_max;
    int i_max = 0;
    std::set<std::string> outputs;
    std::vector<int> fit_degrees;              // defaults to 1..i_max
    std::optional<MultiIndex> fit_bound;       // defaults to i x cmax per degree
    std::optional<std::string> twisted;        // character polynomial text
    std::optional<std::string> cache_dir;
    std::optional<std::string> out_dir;
    int jobs = 1;
};

/// Parses and validates a JSON job description; throws ConfigError.
JobConfig parse_config(const std::string& json_text);
JobConfig load_config(const std::filesystem::path& path);

struct CatalogEntry
{
    std::string name;
    std::string parameters;
    std::string description;
};

std::vector<CatalogEntry> catalog();
std::string list_catalog();

/// Resolves a named family with its numeric parameters.
ArrangementSpec catalog_spec(const std::string& name, int m, int k, int r);

std::string sha256_hex(const std::string& data);

class LatticeCache
{
public:
    explicit LatticeCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

    const std::filesystem::path& dir() const { return dir_; }

    std::string key(const ArrangementSpec& spec, const MultiIndex& n, Index max_codim) const;
    std::filesystem::path path_for(const std::string& key) const { return dir_ / (key + ".lat"); }

    /// Reads a cached lattice; nullopt when absent or when the content hash does not match.
    std::optional<IntersectionLattice> load(const ArrangementSpec& spec, const MultiIndex& n, Index max_codim) const;
    void store(const ArrangementSpec& spec, const IntersectionLattice& lat) const;

    /// Loads, or builds and stores. `hit` reports which happened.
    IntersectionLattice get(const ArrangementSpec& spec, const MultiIndex& n, Index max_codim, bool* hit = nullptr) const;

    /// Removes every cache file; returns the number removed.
    std::size_t clear() const;

private:
    std::filesystem::path dir_;
};

std::string serialize_lattice(const IntersectionLattice& lat);
/// Throws std::runtime_error on malformed input or checksum mismatch.
IntersectionLattice deserialize_lattice(const std::string& text);

struct RunOptions
{
    std::optional<std::string> cache_dir;
    std::optional<std::string> out_dir;
    std::optional<int> jobs;
    bool verbose = false;
};

/// Exit status: 0 success, 1 usage or configuration error, 2 falsification found.
int run(const JobConfig& config, const RunOptions& options, std::ostream& out, std::ostream& err);

}  // namespace arrstab

#endif
