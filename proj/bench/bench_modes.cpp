// Wall-time comparison of the serial reference sampling loop against the
// OpenMP-parallel one, on the heavier check suites. The outputs must agree
// bitwise (asserted here as well as in the unit tests).

#include <chrono>
#include <cstdio>
#include <string>

#include "slantsub/almost_contact.hpp"
#include "slantsub/scenario.hpp"
#include "slantsub/submersion.hpp"

using namespace slantsub;

namespace {

template <class Fn>
double time_once(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void compare(const std::string& label, StructureReport serial, StructureReport parallel,
             double ts, double tp) {
    bool identical = serial.checks.size() == parallel.checks.size();
    for (std::size_t i = 0; identical && i < serial.checks.size(); ++i)
        identical = serial.checks[i].max_defect == parallel.checks[i].max_defect;
    std::printf("%-38s serial %8.3fs  parallel %8.3fs  speedup %5.2fx  %s\n", label.c_str(),
                ts, tp, ts / tp, identical ? "bitwise-equal" : "MISMATCH");
}

} // namespace

int main(int argc, char** argv) {
    const int samples = argc > 1 ? std::atoi(argv[1]) : 2000;
    std::printf("samples per suite: %d\n", samples);

    {
        Scenario kim = builtin_scenario("kim-r5");
        StructureReport rs, rp;
        set_default_exec_mode(ExecMode::Serial);
        const double ts = time_once([&] { rs = check_cosymplectic(kim.structure, samples, 42); });
        set_default_exec_mode(ExecMode::Parallel);
        const double tp = time_once([&] { rp = check_cosymplectic(kim.structure, samples, 42); });
        compare("check_cosymplectic(kim-r5)", rs, rp, ts, tp);
    }
    {
        Scenario sph = builtin_scenario("sphere-radius");
        StructureReport rs, rp;
        const int n = std::max(10, samples / 20);
        set_default_exec_mode(ExecMode::Serial);
        const double ts =
            time_once([&] { rs = verify_curvature_identities(*sph.submersion, n, 42); });
        set_default_exec_mode(ExecMode::Parallel);
        const double tp =
            time_once([&] { rp = verify_curvature_identities(*sph.submersion, n, 42); });
        compare("verify_curvature_identities(sphere)", rs, rp, ts, tp);
    }
    {
        Scenario mixed = builtin_scenario("mixed-r7(pi/3)");
        StructureReport rs, rp;
        set_default_exec_mode(ExecMode::Serial);
        const double ts = time_once([&] { rs = check_axioms(*mixed.submersion, samples, 42); });
        set_default_exec_mode(ExecMode::Parallel);
        const double tp = time_once([&] { rp = check_axioms(*mixed.submersion, samples, 42); });
        compare("check_axioms(mixed-r7)", rs, rp, ts, tp);
    }
    return 0;
}
