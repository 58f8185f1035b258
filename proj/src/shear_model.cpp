#include "sf/shear_model.hpp"

namespace sf {

PullbackResult pullback_shear(const AffinePiece& f_plus, const AffinePiece& f_minus) {
    PullbackResult r;
    // f'(x,y) = f(x+y,y) on W+: c + gx*(x+y) + gy*y
    r.on_plus = {f_plus.c, f_plus.gx, f_plus.gx + f_plus.gy};
    r.on_minus = f_minus;
    // continuity of f itself along R (y = 0, x > 0)
    r.continuous_on_ray = (f_plus.c == f_minus.c) && (f_plus.gx == f_minus.gx);
    r.joint_affine = r.continuous_on_ray && (r.on_plus.gy == r.on_minus.gy);
    return r;
}

namespace {

// Solve for tuples of affine pieces subject to homogeneous constraints given
// as rows over the stacked coefficients; returns the solution dimension.
int solution_dim(const RatMat& constraints, size_t nvars) {
    if (constraints.empty()) return static_cast<int>(nvars);
    return static_cast<int>(nvars - mat_rank(constraints));
}

} // namespace

int shear_ray_section_dim() {
    // unknowns: (c+, gx+, gy+, c-, gx-, gy-)
    // continuity on R: c+ = c-, gx+ = gx-
    // f' affine: gx+ + gy+ = gy-   (derived in pullback_shear)
    RatMat rows = {
        {Rat(1), Rat(0), Rat(0), Rat(-1), Rat(0), Rat(0)},
        {Rat(0), Rat(1), Rat(0), Rat(0), Rat(-1), Rat(0)},
        {Rat(0), Rat(1), Rat(1), Rat(0), Rat(0), Rat(-1)},
    };
    return solution_dim(rows, 6);
}

int shear_disk_section_dim() {
    // Regions of the punctured disk: W+ (x>0,y>=0), B (x<0), W- (x>0,y<=0).
    // unknowns: (c+,gx+,gy+, cB,gxB,gyB, c-,gx-,gy-)
    // continuity across the upper cut x=0,y>0: c+=cB, gy+=gyB
    // continuity across the lower cut x=0,y<0: cB=c-, gyB=gy-
    // shear condition at R between W- and W+ (monodromy crossing):
    //   continuity: c+=c-, gx+=gx-; straightened affine: gx+ + gy+ = gy-
    RatMat rows = {
        {Rat(1), Rat(0), Rat(0), Rat(-1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0)},
        {Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(-1), Rat(0), Rat(0), Rat(0)},
        {Rat(0), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(-1), Rat(0), Rat(0)},
        {Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(-1)},
        {Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-1), Rat(0), Rat(0)},
        {Rat(0), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-1), Rat(0)},
        {Rat(0), Rat(1), Rat(1), Rat(0), Rat(0), Rat(0), Rat(0), Rat(0), Rat(-1)},
        // back region must glue smoothly in x as well (single affine across
        // the two cuts): gx+=gxB and gxB=gx-
        {Rat(0), Rat(1), Rat(0), Rat(0), Rat(-1), Rat(0), Rat(0), Rat(0), Rat(0)},
        {Rat(0), Rat(0), Rat(0), Rat(0), Rat(1), Rat(0), Rat(0), Rat(-1), Rat(0)},
    };
    return solution_dim(rows, 9);
}

int shear_disk_section_dim_via_monodromy(const IntMat2& m) {
    return 1 + static_cast<int>(invariant_covectors(m).size());
}

std::vector<AffinePiece> shear_disk_section_basis() {
    // From the solved system: constants and y (gradient (0,1) everywhere,
    // invariant under the shear).
    return {AffinePiece{Rat(1), Rat(0), Rat(0)}, AffinePiece{Rat(0), Rat(0), Rat(1)}};
}

} // namespace sf
