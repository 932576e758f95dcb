#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "arrstab/cli.hpp"
#include "json.hpp"

namespace arrstab {

using nlohmann::json;

namespace {

std::string file_tag(const MultiIndex& n)
{
    std::string s = to_string(n);
    for (char& ch : s)
    {
        if (ch == '|')
            ch = '-';
    }
    return s;
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << content;
}

json generators_json(const ArrangementSpec& spec)
{
    json arr = json::array();
    for (const auto& g : spec.generators)
        arr.push_back({{"degree", to_string(g.degree)}, {"subspace", g.subspace.key()}});
    return arr;
}

const char* status_of(const StabilityReport& s)
{
    if (s.falsified)
        return "falsified";
    if (s.insufficient_data)
        return "insufficient-data";
    return "stable";
}

}  // namespace

int run(const JobConfig& config, const RunOptions& options, std::ostream& out, std::ostream& err)
{
    std::string cache_dir = ".arrstab-cache";
    if (options.cache_dir)
        cache_dir = *options.cache_dir;
    else if (const char* env = std::getenv("ARRSTAB_CACHE"); env != nullptr && *env != '\0')
        cache_dir = env;
    else if (config.cache_dir)
        cache_dir = *config.cache_dir;
    const std::filesystem::path out_dir = options.out_dir ? *options.out_dir : config.out_dir.value_or("arrstab-out");
    const int jobs = options.jobs.value_or(config.jobs);
    const LatticeCache cache(cache_dir);
    auto log = [&](const std::string& msg) {
        if (options.verbose)
            err << msg << '\n';
    };

    const ArrangementSpec& spec = config.spec;
    const auto wants = [&](const char* name) { return config.outputs.count(name) != 0; };
    const std::vector<MultiIndex> levels = levels_between(config.level_min, config.level_max);
    const Index max_codim = std::max(config.i_max, 1);
    const MultiIndex cmax = spec.max_degree();

    json report;
    report["family"] = config.family_name;
    report["spec"] = {{"m", spec.m}, {"r", spec.r}, {"generators", generators_json(spec)}};
    report["i_max"] = config.i_max;
    json level_list = json::array();
    for (const auto& n : levels)
        level_list.push_back(to_string(n));
    report["levels"] = level_list;
    std::vector<std::string> falsifications;
    std::vector<std::string> errors;

    try
    {
        std::map<MultiIndex, IntersectionLattice> lattices;
        for (const auto& n : levels)
        {
            bool hit = false;
            lattices.emplace(n, cache.get(spec, n, max_codim, &hit));
            log("lattice " + to_string(n) + ": " + std::to_string(lattices.at(n).size()) + " elements ("
                + (hit ? "cached" : "built") + ")");
        }

        const bool need_chars = wants("characters") || wants("fit") || wants("stability") || wants("twisted");
        std::map<std::pair<MultiIndex, int>, ClassFunction> chars;
        if (need_chars)
        {
            for (const auto& n : levels)
            {
                for (int i = 0; i <= config.i_max; ++i)
                    chars[{n, i}] = character_of_cohomology(lattices.at(n), i, jobs);
                log("characters at " + to_string(n) + " done");
            }
        }

        if (wants("betti"))
        {
            std::string csv = "level";
            for (int i = 0; i <= config.i_max; ++i)
                csv += ",b" + std::to_string(i);
            csv += '\n';
            json betti = json::object();
            for (const auto& n : levels)
            {
                csv += to_string(n);
                json row = json::array();
                for (int i = 0; i <= config.i_max; ++i)
                {
                    Index b = 1;
                    if (i > 0)
                    {
                        GMReport gm = gm_betti(lattices.at(n), i);
                        if (need_chars)
                        {
                            const auto& chi = chars.at({n, i});
                            for (std::size_t k = 0; k < chi.classes().size(); ++k)
                                gm.characters.emplace_back(chi.classes()[k], chi.values()[k]);
                        }
                        std::ostringstream table;
                        write_gm_table(table, gm);
                        write_file(out_dir / "gm" / (file_tag(n) + "_i" + std::to_string(i) + ".csv"), table.str());
                        b = gm.total;
                    }
                    csv += "," + std::to_string(b);
                    row.push_back(b);
                }
                csv += '\n';
                betti[to_string(n)] = row;
            }
            write_file(out_dir / "betti.csv", csv);
            report["betti"] = betti;
        }

        if (wants("characters"))
        {
            std::string csv = "level,i,class,value\n";
            for (const auto& [key, chi] : chars)
            {
                for (std::size_t k = 0; k < chi.classes().size(); ++k)
                    csv += to_string(key.first) + "," + std::to_string(key.second) + "," + to_string(chi.classes()[k])
                           + "," + to_string(chi.values()[k]) + "\n";
            }
            write_file(out_dir / "characters.csv", csv);
        }

        if (wants("fit"))
        {
            json fits = json::array();
            for (int i : config.fit_degrees)
            {
                const MultiIndex bound = config.fit_bound.value_or(degree_times(i, cmax));
                std::vector<ClassFunction> samples;
                for (const auto& n : levels)
                {
                    if (leq(bound, n))
                        samples.push_back(chars.at({n, i}));
                }
                json entry = {{"i", i}, {"bound", to_string(bound)}};
                try
                {
                    const CharacterPolynomial p = fit_character_polynomial(samples, bound);
                    entry["status"] = "ok";
                    entry["polynomial"] = to_string(p);
                    entry["binomial"] = to_binomial_string(p);
                    entry["multidegree"] = to_string(p.multidegree());
                    out << "H^" << i << ": " << to_string(p) << '\n';
                }
                catch (const FitError& e)
                {
                    const bool inconsistent = e.kind() == FitError::Kind::inconsistent;
                    entry["status"] = inconsistent ? "inconsistent" : "underdetermined";
                    entry["message"] = e.what();
                    (inconsistent ? falsifications : errors).push_back("fit H^" + std::to_string(i) + ": " + e.what());
                }
                catch (const std::invalid_argument& e)
                {
                    entry["status"] = "underdetermined";
                    entry["message"] = e.what();
                    errors.push_back("fit H^" + std::to_string(i) + ": " + e.what());
                }
                fits.push_back(entry);
            }
            report["fits"] = fits;
        }

        if (wants("freeness"))
        {
            json free = json::array();
            for (int i = 1; i <= config.i_max; ++i)
            {
                const FreenessReport fr = verify_free_decomposition(spec, i, levels, jobs);
                json classes = json::array();
                for (const auto& fc : fr.classes)
                {
                    json values = json::object();
                    for (std::size_t k = 0; k < fc.generating_character.classes().size(); ++k)
                        values[to_string(fc.generating_character.classes()[k])]
                            = to_string(fc.generating_character.values()[k]);
                    classes.push_back({{"degree", to_string(fc.cls.degree)},
                                       {"subspace", fc.cls.subspace.key()},
                                       {"stabilizer_order", fc.cls.stabilizer_order},
                                       {"within_degree_bound", fc.within_degree_bound},
                                       {"generating_character", values}});
                }
                json matches = json::object();
                for (const auto& [n, ok] : fr.level_matches)
                    matches[to_string(n)] = ok;
                free.push_back({{"i", i},
                                {"ok", fr.ok},
                                {"degree_bound", to_string(fr.degree_bound)},
                                {"classes", classes},
                                {"levels", matches},
                                {"mismatch", fr.mismatch}});
                if (!fr.ok)
                    falsifications.push_back("freeness H^" + std::to_string(i) + ": " + fr.mismatch);
            }
            report["freeness"] = free;
        }

        if (wants("normalize"))
        {
            const ArrangementSpec normal = normalize(spec);
            const MultiIndex top = degree_add(normal.max_degree(), MultiIndex(std::vector<int>(cmax.size(), 1)));
            const NormalityReport check = verify_normal(normal, levels_between(MultiIndex::zeros(cmax.size()), top));
            report["normalization"] = {{"original", generators_json(spec)},
                                       {"normalized", generators_json(normal)},
                                       {"changed", !(normal == spec)},
                                       {"normal", check.normal},
                                       {"violation", check.violation}};
        }

        if (wants("stability") || wants("twisted"))
        {
            std::string csv = "quantity,i,predicted_onset,empirical_onset,stable_value,status\n";
            json rows = json::array();
            auto emit = [&](const std::string& quantity, int i, const std::map<MultiIndex, Rational>& values,
                            const MultiIndex& predicted) {
                const StabilityReport s = stability_report(values, predicted);
                const std::string onset = s.stable ? to_string(s.empirical_onset) : "";
                csv += quantity + "," + std::to_string(i) + "," + to_string(predicted) + "," + onset + ","
                       + to_string(s.stable_value) + "," + status_of(s) + "\n";
                json vals = json::object();
                for (const auto& [n, v] : values)
                    vals[to_string(n)] = to_string(v);
                rows.push_back({{"quantity", quantity},
                                {"i", i},
                                {"predicted_onset", to_string(predicted)},
                                {"empirical_onset", onset},
                                {"status", status_of(s)},
                                {"values", vals}});
                if (s.falsified)
                    falsifications.push_back(quantity + " H^" + std::to_string(i) + ": values beyond the predicted onset "
                                             + to_string(predicted) + " are not constant");
            };
            std::optional<CharacterPolynomial> twist;
            if (config.twisted)
                twist = parse_character_polynomial(*config.twisted, spec.m);
            for (int i = 0; i <= config.i_max; ++i)
            {
                const MultiIndex predicted = degree_times(i, cmax);
                if (wants("stability"))
                {
                    std::map<MultiIndex, Rational> values;
                    for (const auto& n : levels)
                        values[n] = invariants_dim(chars.at({n, i}));
                    emit("invariants", i, values, predicted);
                }
                if (wants("twisted") && twist)
                {
                    std::map<MultiIndex, Rational> values;
                    for (const auto& n : levels)
                        values[n] = twisted_betti(chars.at({n, i}), class_function(*twist, n));
                    emit("twisted", i, values, degree_add(predicted, twist->multidegree()));
                }
            }
            write_file(out_dir / "stability.csv", csv);
            report["stability"] = rows;
        }
    }
    catch (const ConfigError& e)
    {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    catch (const std::invalid_argument& e)
    {
        err << "error: " << e.what() << '\n';
        return 1;
    }

    report["falsifications"] = falsifications;
    report["errors"] = errors;
    write_file(out_dir / "report.json", report.dump(2) + "\n");

    for (const auto& f : falsifications)
        err << "falsification: " << f << '\n';
    for (const auto& e : errors)
        err << "error: " << e << '\n';
    if (!falsifications.empty())
        return 2;
    if (!errors.empty())
        return 1;
    return 0;
}

}  // namespace arrstab
