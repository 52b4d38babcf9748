#pragma once

#include <secview/model.hpp>
#include <secview/syntax.hpp>

#include <cstddef>
#include <set>
#include <vector>

namespace secview {

// Componentwise information order: each position equal, or left is null.
// Throws SemanticError on a length mismatch.
bool tuple_leq(const Row& t1, const Row& t2);
bool tuple_leq(const Tuple& t1, const Tuple& t2);

// d1 <=_D d2 for null degradations of `base`, i.e. the changes of d1 are a
// subset of the changes of d2.
bool instance_leq_D(const Instance& base, const Instance& d1, const Instance& d2);

struct SecrecySolution {
  ChangeSet changes;
  Instance instance;
};

enum class EnumerationMode {
  Paper,     // cells at s-relevant positions of tuples in violating matches
  Exhaustive // every non-null cell
};

const char* mode_name(EnumerationMode m) noexcept;

struct EnumerationOptions {
  EnumerationMode mode = EnumerationMode::Paper;
  std::size_t max_cells = 20; // BoundExceeded above this many candidates
};

std::set<Cell> candidate_cells(const Instance& d, const std::vector<ViewDef>& views, EnumerationMode mode);

// Inclusion-minimal admissible change sets over the candidate cells, ordered
// by change set. Throws BoundExceeded when there are too many candidates.
std::vector<SecrecySolution> enumerate_secrecy_instances(const Instance& d, const std::vector<ViewDef>& views,
                                                         const EnumerationOptions& opts = {});

// Independent brute force over every non-null cell. Used as a test oracle.
std::vector<SecrecySolution> oracle_secrecy_instances(const Instance& d, const std::vector<ViewDef>& views,
                                                      std::size_t max_cells = 16);

} // namespace secview
