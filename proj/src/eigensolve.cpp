#include "ncqm/errors.hpp"
#include "ncqm/fock.hpp"

#include <lapacke.h>

namespace ncqm {

void hermitian_eigensolve(const Eigen::MatrixXcd& A, Eigen::VectorXd& w, Eigen::MatrixXcd* V) {
    const lapack_int n = (lapack_int)A.rows();
    if (A.cols() != n) throw Error(ErrorCode::InvalidArgument, "eigensolve needs a square matrix");
    Eigen::MatrixXcd work = A;  // column major, overwritten with eigenvectors
    w.resize(n);
    if (n == 0) {
        if (V) V->resize(0, 0);
        return;
    }
    lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, V ? 'V' : 'N', 'L', n,
                                     reinterpret_cast<lapack_complex_double*>(work.data()), n, w.data());
    if (info != 0) throw Error(ErrorCode::InternalMismatch, "zheevd failed with info " + std::to_string(info));
    if (V) *V = std::move(work);
}

} // namespace ncqm
