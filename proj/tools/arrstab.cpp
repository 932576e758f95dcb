#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "arrstab/cli.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"arrstab: cohomology and representation stability of FI^m subspace arrangements"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Log lattice and character progress to stderr");

    std::string config_path;
    std::string cache_dir;
    std::string out_dir;
    int jobs = 0;

    auto* run = app.add_subcommand("run", "Execute a job configuration");
    run->add_option("-c,--config", config_path, "JSON job configuration")->required();
    run->add_option("--cache", cache_dir, "Lattice cache directory (overrides ARRSTAB_CACHE)");
    run->add_option("--out", out_dir, "Report directory");
    run->add_option("-j,--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    run->add_flag("-v,--verbose", verbose, "Log progress to stderr");

    auto* list = app.add_subcommand("catalog", "List the named arrangement families");

    auto* clean = app.add_subcommand("clean-cache", "Delete cached lattices");
    clean->add_option("--cache", cache_dir, "Lattice cache directory (overrides ARRSTAB_CACHE)");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    if (list->parsed())
    {
        std::cout << arrstab::list_catalog();
        return 0;
    }

    if (clean->parsed())
    {
        if (cache_dir.empty())
        {
            const char* env = std::getenv("ARRSTAB_CACHE");
            cache_dir = (env != nullptr && *env != '\0') ? env : ".arrstab-cache";
        }
        const auto removed = arrstab::LatticeCache(cache_dir).clear();
        std::cout << "removed " << removed << " cached lattice(s) from " << cache_dir << '\n';
        return 0;
    }

    arrstab::JobConfig config;
    try
    {
        config = arrstab::load_config(config_path);
    }
    catch (const arrstab::ConfigError& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    arrstab::RunOptions options;
    if (!cache_dir.empty())
        options.cache_dir = cache_dir;
    if (!out_dir.empty())
        options.out_dir = out_dir;
    if (jobs > 0)
        options.jobs = jobs;
    options.verbose = verbose;
    return arrstab::run(config, options, std::cout, std::cerr);
}
