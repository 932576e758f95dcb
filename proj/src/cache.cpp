#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "arrstab/cli.hpp"

namespace arrstab {

namespace {

constexpr const char* kMagic = "arrstab-lattice 1";

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep))
        out.push_back(cur);
    if (!s.empty() && s.back() == sep)
        out.emplace_back();
    return out;
}

Subspace parse_subspace_key(const std::string& key)
{
    const auto colon = key.find(':');
    if (colon == std::string::npos)
        throw std::runtime_error("malformed subspace key");
    const Index n = std::stol(key.substr(0, colon));
    const std::string body = key.substr(colon + 1);
    if (body.empty())
        return Subspace::ambient(n);
    const auto rows = split(body, ';');
    RationalMatrix c(static_cast<Index>(rows.size()), n);
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        const auto entries = split(rows[i], ',');
        if (static_cast<Index>(entries.size()) != n)
            throw std::runtime_error("malformed subspace key row");
        for (std::size_t k = 0; k < entries.size(); ++k)
            c(static_cast<Index>(i), static_cast<Index>(k)) = parse_rational(entries[k]);
    }
    Subspace x = Subspace::from_constraints(n, c);
    if (x.key() != key)
        throw std::runtime_error("subspace key is not canonical");
    return x;
}

}  // namespace

std::string sha256_hex(const std::string& data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1
        || EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, digest, &len) != 1)
    {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("sha256 failed");
    }
    EVP_MD_CTX_free(ctx);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i)
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    return os.str();
}

std::string serialize_lattice(const IntersectionLattice& lat)
{
    std::ostringstream os;
    os << kMagic << '\n'
       << "level " << to_string(lat.level()) << '\n'
       << "r " << lat.r() << '\n'
       << "max_codim " << lat.max_codim() << '\n'
       << "elements " << lat.size() << '\n';
    for (std::size_t k = 0; k < lat.size(); ++k)
    {
        os << "E " << lat.element(k).key() << '\n';
        for (const auto& w : lat.provenance(k))
            os << "W " << w.generator << ' ' << to_string(w.map) << '\n';
    }
    const std::string body = os.str();
    return body + "sha256 " + sha256_hex(body) + '\n';
}

IntersectionLattice deserialize_lattice(const std::string& text)
{
    const auto tail = text.rfind("sha256 ");
    if (tail == std::string::npos)
        throw std::runtime_error("cache file has no checksum");
    const std::string body = text.substr(0, tail);
    std::string stored = text.substr(tail + 7);
    while (!stored.empty() && (stored.back() == '\n' || stored.back() == '\r'))
        stored.pop_back();
    if (sha256_hex(body) != stored)
        throw std::runtime_error("cache checksum mismatch");

    std::istringstream in(body);
    std::string line;
    auto field = [&](const std::string& name) {
        if (!std::getline(in, line) || line.rfind(name + " ", 0) != 0)
            throw std::runtime_error("cache file: expected '" + name + "'");
        return line.substr(name.size() + 1);
    };
    if (!std::getline(in, line) || line != kMagic)
        throw std::runtime_error("not a lattice cache file");
    const MultiIndex level = parse_multi_index(field("level"));
    const int r = std::stoi(field("r"));
    const Index max_codim = std::stol(field("max_codim"));
    const std::size_t count = std::stoul(field("elements"));

    std::vector<Subspace> elements;
    std::vector<std::vector<Witness>> provenance;
    while (std::getline(in, line))
    {
        if (line.rfind("E ", 0) == 0)
        {
            elements.push_back(parse_subspace_key(line.substr(2)));
            provenance.emplace_back();
        }
        else if (line.rfind("W ", 0) == 0 && !provenance.empty())
        {
            const std::string rest = line.substr(2);
            const auto space = rest.find(' ');
            if (space == std::string::npos)
                throw std::runtime_error("cache file: malformed witness");
            provenance.back().push_back(
                {std::stoul(rest.substr(0, space)), parse_injection(rest.substr(space + 1), level)});
        }
        else
            throw std::runtime_error("cache file: unexpected line");
    }
    if (elements.size() != count)
        throw std::runtime_error("cache file: element count mismatch");
    return IntersectionLattice(level, r, max_codim, std::move(elements), std::move(provenance));
}

std::string LatticeCache::key(const ArrangementSpec& spec, const MultiIndex& n, Index max_codim) const
{
    return sha256_hex(spec.serialize() + "\nlevel " + to_string(n) + "\nmax_codim " + std::to_string(max_codim));
}

std::optional<IntersectionLattice> LatticeCache::load(const ArrangementSpec& spec, const MultiIndex& n,
                                                      Index max_codim) const
{
    std::ifstream in(path_for(key(spec, n, max_codim)), std::ios::binary);
    if (!in)
        return std::nullopt;
    std::ostringstream buf;
    buf << in.rdbuf();
    try
    {
        IntersectionLattice lat = deserialize_lattice(buf.str());
        if (lat.level() != n || lat.max_codim() != max_codim || lat.r() != spec.r)
            return std::nullopt;
        return lat;
    }
    catch (const std::exception&)
    {
        return std::nullopt;
    }
}

void LatticeCache::store(const ArrangementSpec& spec, const IntersectionLattice& lat) const
{
    std::filesystem::create_directories(dir_);
    const auto final_path = path_for(key(spec, lat.level(), lat.max_codim()));
    const auto tmp = final_path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write cache file " + tmp);
        out << serialize_lattice(lat);
    }
    std::filesystem::rename(tmp, final_path);
}

IntersectionLattice LatticeCache::get(const ArrangementSpec& spec, const MultiIndex& n, Index max_codim,
                                      bool* hit) const
{
    if (auto cached = load(spec, n, max_codim))
    {
        if (hit != nullptr)
            *hit = true;
        return std::move(*cached);
    }
    if (hit != nullptr)
        *hit = false;
    IntersectionLattice lat = build_lattice(spec, n, max_codim);
    store(spec, lat);
    return lat;
}

std::size_t LatticeCache::clear() const
{
    std::size_t removed = 0;
    if (!std::filesystem::exists(dir_))
        return 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir_))
    {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".lat" || ext == ".tmp"))
        {
            std::filesystem::remove(entry.path());
            ++removed;
        }
    }
    return removed;
}

}  // namespace arrstab
