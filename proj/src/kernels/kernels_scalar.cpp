#include "xygibbs/kernels.hpp"

#include "kernels_body.hpp"

namespace xygibbs::kernels {

namespace {
using body::ScalarLane;
}

const KernelTable& scalar_table() {
    static const KernelTable table = {
        "scalar",
        &body::eval_poly<ScalarLane>,
        &body::eval_example1<ScalarLane>,
        &body::eval_example1_tail<ScalarLane>,
        &body::exp_scaled<ScalarLane>,
        &body::dot<ScalarLane>,
    };
    return table;
}

}  // namespace xygibbs::kernels
