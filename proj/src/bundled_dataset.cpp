#include "jzsbf/dataset.hpp"

namespace jzsbf {

// Kept byte-identical to data/aducanumab.csv (checked by the test suite).
std::string_view aducanumab_csv() noexcept {
    return "trial,arm,n,p,t,design\n"
           "EMERGE,low,543,0.09,,two_sample\n"
           "EMERGE,high,547,0.012,,two_sample\n"
           "ENGAGE,low,547,0.24,,two_sample\n"
           "ENGAGE,high,555,0.82,,two_sample\n";
}

}  // namespace jzsbf
