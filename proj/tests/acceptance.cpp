#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <thread>

#include "shady/reproduce.hpp"

int main(int argc, char** argv) {
    shady::ReproduceOptions opt;
    opt.jobs = std::max(1u, std::thread::hardware_concurrency());
    std::vector<int> only;
    CLI::App app{"Acceptance checks; one line per criterion"};
    app.add_option("--work-dir", opt.work_dir, "Scratch directory for generated files");
    app.add_option("--jobs", opt.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--seed", opt.seed, "Seed for the randomized checks");
    app.add_option("--only", only, "Run only these criteria");
    CLI11_PARSE(app, argc, argv);

    std::filesystem::create_directories(opt.work_dir);
    if (only.empty())
        for (int id = 1; id <= 11; ++id) only.push_back(id);
    int failed = 0, total = 0;
    for (int id : only) {
        const auto results = shady::reproduce(opt, {id});
        if (results.empty()) continue;
        const auto& r = results.front();
        ++total;
        std::cout << (r.passed ? "PASS" : "FAIL") << " #" << r.id << ' ' << r.title << ": " << r.detail << " ("
                  << std::fixed << std::setprecision(2) << r.seconds << " s)" << std::endl;
        failed += !r.passed;
    }
    std::cout << total - failed << '/' << total << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
