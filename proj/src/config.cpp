#include <fstream>
#include <sstream>

#include "arrstab/cli.hpp"
#include "json.hpp"

namespace arrstab {

using nlohmann::json;

namespace {

const std::set<std::string> known_outputs{"betti", "characters", "fit", "freeness", "normalize", "stability", "twisted"};

int require_int(const json& j, const char* key, int min_value)
{
    if (!j.contains(key))
        throw ConfigError(std::string("missing field '") + key + "'");
    if (!j.at(key).is_number_integer())
        throw ConfigError(std::string("field '") + key + "' must be an integer");
    const int v = j.at(key).get<int>();
    if (v < min_value)
        throw ConfigError(std::string("field '") + key + "' must be >= " + std::to_string(min_value) + ", got "
                          + std::to_string(v));
    return v;
}

MultiIndex to_multi_index(const json& j, const std::string& what)
{
    if (j.is_number_integer())
        return MultiIndex{j.get<int>()};
    if (!j.is_array())
        throw ConfigError(what + " must be an array of nonnegative integers");
    std::vector<int> v;
    for (const auto& e : j)
    {
        if (!e.is_number_integer() || e.get<int>() < 0)
            throw ConfigError(what + " must be an array of nonnegative integers");
        v.push_back(e.get<int>());
    }
    return MultiIndex(std::move(v));
}

Rational to_rational(const json& j)
{
    if (j.is_number_integer())
        return Rational(j.get<long long>());
    if (j.is_string())
    {
        try
        {
            return parse_rational(j.get<std::string>());
        }
        catch (const std::invalid_argument& e)
        {
            throw ConfigError(e.what());
        }
    }
    throw ConfigError("constraint entries must be integers or \"p/q\" strings");
}

ArrangementSpec custom_spec(const json& fam)
{
    ArrangementSpec spec;
    spec.m = require_int(fam, "m", 1);
    spec.r = require_int(fam, "r", 1);
    if (!fam.contains("generators") || !fam.at("generators").is_array())
        throw ConfigError("custom family needs a 'generators' array");
    for (const auto& g : fam.at("generators"))
    {
        if (!g.contains("degree") || !g.contains("constraints"))
            throw ConfigError("each generator needs 'degree' and 'constraints'");
        const MultiIndex degree = to_multi_index(g.at("degree"), "generator degree");
        const Index dim = ambient_dim(degree, spec.r);
        const auto& rows = g.at("constraints");
        if (!rows.is_array())
            throw ConfigError("'constraints' must be an array of rows");
        RationalMatrix c(static_cast<Index>(rows.size()), dim);
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            if (!rows[i].is_array() || static_cast<Index>(rows[i].size()) != dim)
                throw ConfigError("constraint rows must have " + std::to_string(dim) + " entries at degree "
                                  + to_string(degree));
            for (std::size_t k = 0; k < rows[i].size(); ++k)
                c(static_cast<Index>(i), static_cast<Index>(k)) = to_rational(rows[i][k]);
        }
        spec.generators.push_back({degree, Subspace::from_constraints(dim, c)});
    }
    return spec;
}

}  // namespace

std::vector<CatalogEntry> catalog()
{
    return {
        {"mkr", "m k r", "diagonal of (V^k)^m with V = Q^r; the general family"},
        {"braid", "", "braid = mkr(1,2,1): pure configuration spaces of the plane"},
        {"conf", "r", "conf(r) = mkr(1,2,r): ordered configurations in C^r"},
        {"k-equals", "k", "k-equals(k) = mkr(1,k,1): no k points coincide"},
        {"rational-maps", "m", "rational-maps(m) = mkr(m,1,1): covers of based rational maps"},
    };
}

std::string list_catalog()
{
    std::ostringstream os;
    for (const auto& e : catalog())
    {
        os << e.name;
        if (!e.parameters.empty())
            os << " (" << e.parameters << ")";
        os << "\n    " << e.description << "\n";
    }
    return os.str();
}

ArrangementSpec catalog_spec(const std::string& name, int m, int k, int r)
{
    if (name == "mkr")
        return family_mkr(m, k, r);
    if (name == "braid")
        return family_mkr(1, 2, 1);
    if (name == "conf")
        return family_mkr(1, 2, r);
    if (name == "k-equals")
        return family_mkr(1, k, 1);
    if (name == "rational-maps")
        return family_mkr(m, 1, 1);
    throw ConfigError("unknown family '" + name + "' (see `arrstab catalog`)");
}

JobConfig parse_config(const std::string& json_text)
{
    json root;
    try
    {
        root = json::parse(json_text);
    }
    catch (const json::parse_error& e)
    {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!root.is_object())
        throw ConfigError("config must be a JSON object");

    JobConfig cfg;
    if (!root.contains("family") || !root.at("family").is_object())
        throw ConfigError("missing 'family' section");
    const auto& fam = root.at("family");
    if (!fam.contains("name") || !fam.at("name").is_string())
        throw ConfigError("family needs a 'name'");
    cfg.family_name = fam.at("name").get<std::string>();
    try
    {
        if (cfg.family_name == "custom")
            cfg.spec = custom_spec(fam);
        else
        {
            const bool needs_m = cfg.family_name == "mkr" || cfg.family_name == "rational-maps";
            const bool needs_k = cfg.family_name == "mkr" || cfg.family_name == "k-equals";
            const bool needs_r = cfg.family_name == "mkr" || cfg.family_name == "conf";
            cfg.spec = catalog_spec(cfg.family_name, needs_m ? require_int(fam, "m", 1) : 1,
                                    needs_k ? require_int(fam, "k", 1) : 1, needs_r ? require_int(fam, "r", 1) : 1);
        }
        cfg.spec.validate();
    }
    catch (const std::invalid_argument& e)
    {
        throw ConfigError(e.what());
    }

    if (!root.contains("levels") || !root.at("levels").is_object())
        throw ConfigError("missing 'levels' section with 'min' and 'max'");
    const auto& levels = root.at("levels");
    if (!levels.contains("min") || !levels.contains("max"))
        throw ConfigError("'levels' needs 'min' and 'max'");
    cfg.level_min = to_multi_index(levels.at("min"), "levels.min");
    cfg.level_max = to_multi_index(levels.at("max"), "levels.max");
    const auto m = static_cast<std::size_t>(cfg.spec.m);
    if (cfg.level_min.size() != m || cfg.level_max.size() != m)
        throw ConfigError("levels must have " + std::to_string(m) + " entries");
    if (!leq(cfg.level_min, cfg.level_max))
        throw ConfigError("levels.min must be <= levels.max componentwise");

    cfg.i_max = require_int(root, "i_max", 0);

    if (root.contains("outputs"))
    {
        for (const auto& o : root.at("outputs"))
        {
            if (!o.is_string() || known_outputs.count(o.get<std::string>()) == 0)
                throw ConfigError("unknown output '" + o.dump() + "'");
            cfg.outputs.insert(o.get<std::string>());
        }
    }
    else
        cfg.outputs.insert("betti");

    if (root.contains("fit"))
    {
        const auto& fit = root.at("fit");
        if (fit.contains("degrees"))
        {
            for (const auto& d : fit.at("degrees"))
            {
                if (!d.is_number_integer() || d.get<int>() < 0 || d.get<int>() > cfg.i_max)
                    throw ConfigError("fit degrees must lie in 0..i_max");
                cfg.fit_degrees.push_back(d.get<int>());
            }
        }
        if (fit.contains("bound"))
        {
            cfg.fit_bound = to_multi_index(fit.at("bound"), "fit.bound");
            if (cfg.fit_bound->size() != m)
                throw ConfigError("fit.bound must have " + std::to_string(m) + " entries");
        }
    }
    if (cfg.fit_degrees.empty())
    {
        for (int i = 1; i <= cfg.i_max; ++i)
            cfg.fit_degrees.push_back(i);
    }

    if (root.contains("twisted"))
    {
        if (!root.at("twisted").is_string())
            throw ConfigError("'twisted' must be a character polynomial string");
        cfg.twisted = root.at("twisted").get<std::string>();
        try
        {
            parse_character_polynomial(*cfg.twisted, cfg.spec.m);
        }
        catch (const std::invalid_argument& e)
        {
            throw ConfigError(e.what());
        }
    }
    if (cfg.outputs.count("twisted") != 0 && !cfg.twisted)
        throw ConfigError("output 'twisted' needs a 'twisted' character polynomial");

    if (root.contains("cache"))
        cfg.cache_dir = root.at("cache").get<std::string>();
    if (root.contains("out"))
        cfg.out_dir = root.at("out").get<std::string>();
    if (root.contains("jobs"))
        cfg.jobs = require_int(root, "jobs", 1);
    return cfg;
}

JobConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace arrstab
