#ifndef FLAGFORGE_GALLERY_HPP
#define FLAGFORGE_GALLERY_HPP

#include <string>
#include <vector>

namespace flagforge {

// One reproduction check from the example gallery: a fixed numbered claim,
// whether it held, and a short account of what was computed.
struct CriterionResult {
    int number = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct GalleryOptions {
    unsigned long long budget = 1000000;
    unsigned seed = 20240817;
    // Cap on the exhaustive stage-two sweep of criterion four.
    int sweep_cap = 16384;
};

// Runs the full gallery in order. Exceptions are caught per criterion and
// reported as failures; a slow machine can only trip the timed criteria.
std::vector<CriterionResult> run_gallery(const GalleryOptions& opt = {});

std::string format_gallery_line(const CriterionResult& r);

} // namespace flagforge

#endif
