#include "qjd/hermitian.hpp"

#include <cmath>
#include <sstream>

namespace qjd {

namespace {

constexpr double kHermTol = 1e-12;

std::mt19937_64 seeded_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

CMatrix complex_gaussian(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix g(n, n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double re = gauss(rng);
            double im = gauss(rng);
            g(j, k) = Complex(re * inv_sqrt2, im * inv_sqrt2);
        }
    return g;
}

}  // namespace

HermitianMatrix::HermitianMatrix(CMatrix m) : mat_(std::move(m)) {
    if (mat_.rows() < 1 || mat_.rows() != mat_.cols())
        throw validation_error("HermitianMatrix: dimension must be a square n x n with n >= 1");
    int wr = 0, wc = 0;
    double defect = hermiticity_defect(mat_, &wr, &wc);
    double scale = 1.0 + mat_.cwiseAbs().maxCoeff();
    if (defect > kHermTol * scale) {
        std::ostringstream os;
        os << "HermitianMatrix: entry (" << wr << "," << wc << ") differs from the conjugate of ("
           << wc << "," << wr << ") by " << defect << " (tolerance " << kHermTol * scale << ")";
        throw validation_error(os.str());
    }
    mat_ = 0.5 * (mat_ + mat_.adjoint().eval());
}

double HermitianMatrix::max_abs() const { return mat_.cwiseAbs().maxCoeff(); }

double HermitianMatrix::hermiticity_defect(const CMatrix& m, int* row, int* col) {
    double worst = 0.0;
    int wr = 0, wc = 0;
    for (int j = 0; j < m.rows(); ++j)
        for (int k = j; k < m.cols(); ++k) {
            double d = std::abs(m(j, k) - std::conj(m(k, j)));
            if (d > worst) {
                worst = d;
                wr = j;
                wc = k;
            }
        }
    if (row) *row = wr;
    if (col) *col = wc;
    return worst;
}

HermitianMatrix HermitianMatrix::hermitian_part(const CMatrix& m) {
    return HermitianMatrix(0.5 * (m + m.adjoint().eval()), unchecked_t{});
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix::hermitian_part(a.mat() + b.mat());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
    return HermitianMatrix::hermitian_part(a.mat() - b.mat());
}

HermitianMatrix operator*(double c, const HermitianMatrix& a) {
    return HermitianMatrix::hermitian_part(c * a.mat());
}

ConvexCombination::ConvexCombination(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) throw validation_error("ConvexCombination: empty weight vector");
    double sum = 0.0;
    for (double w : weights_) {
        if (w < 0.0 || w > 1.0) throw validation_error("ConvexCombination: weight outside [0,1]");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-14)
        throw validation_error("ConvexCombination: weights do not sum to 1");
}

SpectralDecomposition eigendecompose(const HermitianMatrix& a) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.mat());
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: solver did not converge");
    return SpectralDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

double hs_inner(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) throw validation_error("hs_inner: dimension mismatch");
    return (a.mat() * b.mat()).trace().real();
}

double spectral_radius(const HermitianMatrix& a) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.mat(), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
    if (a.dim() != b.dim()) throw validation_error("loewner_leq: dimension mismatch");
    if (tol < 0.0) throw validation_error("loewner_leq: tol must be >= 0");
    HermitianMatrix diff = b - a;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(diff.mat(), Eigen::EigenvaluesOnly);
    double lo = solver.eigenvalues().minCoeff();
    double rho = solver.eigenvalues().cwiseAbs().maxCoeff();
    return lo >= -tol * (1.0 + rho);
}

HermitianMatrix random_pd(int n, double spectrum_lo, double spectrum_hi, std::mt19937_64& rng) {
    if (n < 1) throw validation_error("random_pd: n must be >= 1");
    if (!(0.0 < spectrum_lo && spectrum_lo <= spectrum_hi))
        throw validation_error("random_pd: need 0 < spectrum_lo <= spectrum_hi");
    CMatrix u = random_unitary(n, rng);
    std::uniform_real_distribution<double> unif(spectrum_lo, spectrum_hi);
    RVector s(n);
    for (int k = 0; k < n; ++k) s(k) = unif(rng);
    return HermitianMatrix::hermitian_part(u * s.asDiagonal() * u.adjoint());
}

HermitianMatrix random_pd(int n, double spectrum_lo, double spectrum_hi, std::uint64_t seed) {
    auto rng = seeded_rng(seed);
    return random_pd(n, spectrum_lo, spectrum_hi, rng);
}

HermitianMatrix random_hermitian(int n, double scale, std::mt19937_64& rng) {
    if (n < 1) throw validation_error("random_hermitian: n must be >= 1");
    if (!(scale > 0.0)) throw validation_error("random_hermitian: scale must be > 0");
    CMatrix g = complex_gaussian(n, rng);
    return HermitianMatrix::hermitian_part(scale * g);
}

HermitianMatrix random_hermitian(int n, double scale, std::uint64_t seed) {
    auto rng = seeded_rng(seed);
    return random_hermitian(n, scale, rng);
}

CVector random_vector(int n, double scale, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CVector v(n);
    const double inv_sqrt2 = scale / std::sqrt(2.0);
    for (int k = 0; k < n; ++k) v(k) = Complex(gauss(rng) * inv_sqrt2, gauss(rng) * inv_sqrt2);
    return v;
}

CMatrix random_unitary(int n, std::mt19937_64& rng) {
    CMatrix g = complex_gaussian(n, rng);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    // Fix the phase of R's diagonal so the distribution is Haar.
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < n; ++k) {
        Complex d = r(k, k);
        double ad = std::abs(d);
        q.col(k) *= (ad > 0.0) ? d / ad : Complex(1.0, 0.0);
    }
    return q;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    // splitmix64 over a simple combination
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1) + 0xBF58476D1CE4E5B9ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::vector<HermitianMatrix> hermitian_basis(int n) {
    std::vector<HermitianMatrix> basis;
    basis.reserve(static_cast<std::size_t>(n) * n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < n; ++j) {
        CMatrix e = CMatrix::Zero(n, n);
        e(j, j) = 1.0;
        basis.push_back(HermitianMatrix::hermitian_part(e));
    }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            CMatrix e = CMatrix::Zero(n, n);
            e(j, k) = inv_sqrt2;
            e(k, j) = inv_sqrt2;
            basis.push_back(HermitianMatrix::hermitian_part(e));
        }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            CMatrix e = CMatrix::Zero(n, n);
            e(j, k) = Complex(0.0, 1.0) * inv_sqrt2;
            e(k, j) = Complex(0.0, -1.0) * inv_sqrt2;
            basis.push_back(HermitianMatrix::hermitian_part(e));
        }
    return basis;
}

RVector basis_coords(const HermitianMatrix& h) {
    int n = h.dim();
    const CMatrix& m = h.mat();
    RVector c(n * n);
    const double sqrt2 = std::sqrt(2.0);
    int idx = 0;
    for (int j = 0; j < n; ++j) c(idx++) = m(j, j).real();
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) c(idx++) = sqrt2 * m(j, k).real();
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) c(idx++) = sqrt2 * m(j, k).imag();
    return c;
}

HermitianMatrix from_basis_coords(int n, const RVector& coords) {
    if (coords.size() != static_cast<Eigen::Index>(n) * n)
        throw validation_error("from_basis_coords: coordinate vector has wrong length");
    CMatrix m = CMatrix::Zero(n, n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    int idx = 0;
    for (int j = 0; j < n; ++j) m(j, j) = coords(idx++);
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            double c = coords(idx++) * inv_sqrt2;
            m(j, k) += c;
            m(k, j) += c;
        }
    for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
            double c = coords(idx++) * inv_sqrt2;
            m(j, k) += Complex(0.0, c);
            m(k, j) += Complex(0.0, -c);
        }
    return HermitianMatrix::hermitian_part(m);
}

}  // namespace qjd
