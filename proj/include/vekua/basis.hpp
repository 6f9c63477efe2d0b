#pragma once

// ---------------------------------------------------------------------------
// Complex embedding of warped coordinates and the radially-modulated
// Fourier basis.
//
// Each sample becomes a complex coordinate zeta = x + iy; each learnable
// frequency is f_k = u_k + i v_k. The projection
//     phi_k = Re(zeta * conj(f_k)) = x u_k + y v_k
// feeds a row of four K-wide column blocks:
//     [ sin phi | cos phi | |zeta| sin phi | |zeta| cos phi ]
// The sin/cos blocks stay in [-1, 1]; the radial blocks are bounded by
// max_n |zeta_n|. The column block order is fixed: checkpoints depend on it.
// ---------------------------------------------------------------------------

#include <cstddef>
#include <vector>

#include "vekua/dense.hpp"

namespace vekua {

struct ComplexBuffer {
    std::vector<double> re, im;
    std::size_t size() const { return re.size(); }
};

struct FrequencySet {
    std::vector<double> re, im; // u_k, v_k
    std::size_t size() const { return re.size(); }
};

// Basis matrices are plain DenseMatrix values of shape N x 4K with the block
// layout above.
using BasisMatrix = DenseMatrix;

struct BasisVjp {
    DenseMatrix d_zeta;  // N x 2 gradient w.r.t. (x, y) of each zeta
    FrequencySet d_freqs;
};

// Embeds coordinates plus their warp into the complex plane.
//   d = 2: zeta = (x1 + uv1) + i (x2 + uv2)
//   d = 1: zeta = (x  + uv1) + i uv2
// Throws UnsupportedDimension for other d.
ComplexBuffer embed_complex(const DenseMatrix& x, const DenseMatrix& uv);

BasisMatrix vekua_basis(const ComplexBuffer& zeta, const FrequencySet& freqs);

// Exact reverse-mode chain rule through vekua_basis. The radial term's
// gradient d|zeta|/dx = x/|zeta| is taken as 0 at zeta = 0 (subgradient
// convention).
BasisVjp vekua_basis_vjp(const ComplexBuffer& zeta, const FrequencySet& freqs,
                         const DenseMatrix& d_psi);

// Frequencies drawn i.i.d. normal with standard deviation sigma_f: a few
// oscillations across the normalized domain without immediate aliasing.
FrequencySet freqs_init(std::uint64_t seed, std::size_t k, double sigma_f);

} // namespace vekua
