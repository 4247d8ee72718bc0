#ifndef IQK_SWEEP_HPP
#define IQK_SWEEP_HPP

#include "iqk/classify.hpp"

namespace iqk {

// Fundamental discriminants in the half-open range [dmin, dmax), ordered by
// increasing |D|.
std::vector<Int> fundamental_discs_in(const Int& dmin, const Int& dmax);

std::string sweep_csv_header();
std::string sweep_csv_row(const ClassificationReport& r);

// One CSV row per discriminant, in range order. The serial engine is the
// reference implementation; the parallel one must produce identical rows.
std::vector<std::string> run_sweep_serial(const std::vector<Int>& discs, const Int& p, const Options& opts);
std::vector<std::string> run_sweep_parallel(const std::vector<Int>& discs, const Int& p, const Options& opts,
                                            int jobs);

// Resumable sweep to a CSV file: rows already present (by disc and prime) are
// kept and only missing discriminants are computed and appended.
void sweep_to_file(const std::string& path, const Int& dmin, const Int& dmax, const Int& p,
                   const Options& opts, int jobs);

}  // namespace iqk

#endif
