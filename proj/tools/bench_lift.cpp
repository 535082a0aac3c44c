// Benchmark the stack-lifting stage: serial vs concurrent construction over
// the base cells of each level. The two must produce identical
// decompositions; the tool verifies that on every run and reports timings.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cadmin/builder.hpp"
#include "cadmin/cad.hpp"
#include "cadmin/family.hpp"

namespace {

using cadmin::Family;
using cadmin::Polynomial;
using cadmin::Rational;
using cadmin::SetDefinition;

Polynomial var(int vars, int slot) { return Polynomial::variable(vars, slot); }

struct Instance {
    std::string name;
    Family family;
    std::vector<Polynomial> extra;
};

std::vector<Instance> instances() {
    std::vector<Instance> out;

    {
        Instance inst;
        inst.name = "circle + axis";
        const Polynomial x = var(2, 0), y = var(2, 1);
        inst.family.dimension = 2;
        inst.family.sets.push_back(
            {"circle", {x * x + y * y - Polynomial::constant(2, Rational(1))}, {}});
        inst.extra = {x};
        out.push_back(inst);
    }
    {
        Instance inst;
        inst.name = "two circles";
        const Polynomial x = var(2, 0), y = var(2, 1);
        const Polynomial one = Polynomial::constant(2, Rational(1));
        inst.family.dimension = 2;
        inst.family.sets.push_back({"left", {x * x + y * y - one}, {}});
        inst.family.sets.push_back({"right", {(x - one) * (x - one) + y * y - one}, {}});
        out.push_back(inst);
    }
    {
        Instance inst;
        inst.name = "sphere + plane";
        const Polynomial x = var(3, 0), y = var(3, 1), z = var(3, 2);
        inst.family.dimension = 3;
        inst.family.sets.push_back(
            {"sphere", {x * x + y * y + z * z - Polynomial::constant(3, Rational(1))}, {}});
        inst.extra = {x};
        out.push_back(inst);
    }
    {
        Instance inst;
        inst.name = "sphere + ellipsoid";
        const Polynomial x = var(3, 0), y = var(3, 1), z = var(3, 2);
        const Polynomial one = Polynomial::constant(3, Rational(1));
        inst.family.dimension = 3;
        inst.family.sets.push_back({"sphere", {x * x + y * y + z * z - one}, {}});
        inst.family.sets.push_back(
            {"ellipsoid", {x * x + (y * y) * Rational(2) + (z * z) * Rational(3) - one}, {}});
        out.push_back(inst);
    }
    return out;
}

double bestMillis(const cadmin::ProjectionBasis& basis, bool parallel, int repeat,
                  std::string* key) {
    double best = -1;
    for (int r = 0; r < repeat; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        cadmin::LiftOptions opts;
        opts.parallel = parallel;
        cadmin::Cad c = cadmin::liftCad(basis, opts);
        const auto t1 = std::chrono::steady_clock::now();
        const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        if (best < 0 || ms < best) best = ms;
        *key = cadmin::canonicalKey(c);
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time serial vs concurrent stack lifting and verify equality"};
    int repeat = 3;
    app.add_option("--repeat", repeat, "runs per configuration (best time wins)")
        ->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    bool allEqual = true;
    std::cout << "instance              serial ms   parallel ms   speedup   equal\n";
    for (const Instance& inst : instances()) {
        const cadmin::ProjectionBasis basis =
            cadmin::buildProjectionBasis(inst.family, inst.extra);
        std::string serialKey, parallelKey;
        const double s = bestMillis(basis, false, repeat, &serialKey);
        const double p = bestMillis(basis, true, repeat, &parallelKey);
        const bool eq = serialKey == parallelKey;
        allEqual = allEqual && eq;
        std::printf("%-20s %10.2f %12.2f %9.2fx   %s\n", inst.name.c_str(), s, p,
                    p > 0 ? s / p : 0.0, eq ? "yes" : "NO");
    }
    if (!allEqual) {
        std::cerr << "serial and concurrent lifting disagreed\n";
        return 1;
    }
    return 0;
}
