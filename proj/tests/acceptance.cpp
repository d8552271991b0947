// Acceptance harness: each criterion is a standalone check with its
// tolerances pinned below. Run with a criterion number (1-9) to execute one,
// or with no arguments to run all. Prints exactly one PASS/FAIL line per
// criterion executed; exits nonzero if any executed criterion fails.

#include <cstdio>
#include <cstdlib>
#include <exception>
#include <string>

namespace accept {

bool criterion_1();
bool criterion_2();
bool criterion_3();
bool criterion_4();
bool criterion_5();
bool criterion_6();
bool criterion_7();
bool criterion_8();
bool criterion_9();

using CriterionFn = bool (*)();
struct Criterion {
    int id;
    const char* title;
    CriterionFn fn;
};

const Criterion kCriteria[] = {
    {1, "exact coded points and orbit-side sums at (2/5, 9/10)", criterion_1},
    {2, "rectangle certificate for the top-boundary gap condition", criterion_2},
    {3, "dimension bracket for the pair {01, 1} at (2/5, 9/10)", criterion_3},
    {4, "exhaustive negative search at (9/20, 3/5)", criterion_4},
    {5, "box-dimension estimates at two parameter points", criterion_5},
    {6, "interior tests: threshold grid and diagonal/general agreement", criterion_6},
    {7, "level-set structure across five parameter points", criterion_7},
    {8, "top-boundary iteration: monotone growth, decay, cover match, symmetry", criterion_8},
    {9, "sweep certificate databases re-verify and spot-check", criterion_9},
};

bool not_implemented(int id) {
    std::printf("criterion %d: FAIL (not implemented)\n", id);
    return false;
}

bool criterion_1() { return not_implemented(1); }
bool criterion_2() { return not_implemented(2); }
bool criterion_3() { return not_implemented(3); }
bool criterion_4() { return not_implemented(4); }
bool criterion_5() { return not_implemented(5); }
bool criterion_6() { return not_implemented(6); }
bool criterion_7() { return not_implemented(7); }
bool criterion_8() { return not_implemented(8); }
bool criterion_9() { return not_implemented(9); }

}  // namespace accept

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > 9) {
            std::fprintf(stderr, "usage: %s [criterion 1-9]\n", argv[0]);
            return 1;
        }
    }
    bool all_ok = true;
    for (const auto& c : accept::kCriteria) {
        if (only != 0 && c.id != only) continue;
        bool ok = false;
        try {
            ok = c.fn();
        } catch (const std::exception& e) {
            std::printf("criterion %d: FAIL (exception: %s)\n", c.id, e.what());
            ok = false;
        }
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
