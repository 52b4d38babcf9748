#pragma once

#include <secview/eval.hpp>
#include <secview/instances.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace secview {

struct SecretAnswerReport {
  Query query;
  AnswerSet answers; // intersection over all secrecy instances
  std::vector<std::pair<ChangeSet, AnswerSet>> per_instance;
};

SecretAnswerReport secret_answers(const Instance& d, const std::vector<ViewDef>& views, const Query& q,
                                  const EnumerationOptions& opts = {});
// Same, over an already enumerated set of secrecy instances.
SecretAnswerReport secret_answers(const std::vector<SecrecySolution>& sis, const Query& q);

// Secret answers to every atomic query R(X1,...,Xn), as an instance with fresh
// tids in row order.
Instance secrecy_answer_instance(const Instance& d, const std::vector<ViewDef>& views,
                                 const EnumerationOptions& opts = {});
Instance secrecy_answer_instance(const Instance& d, const std::vector<SecrecySolution>& sis);

struct LeakageReport {
  bool ok = true;
  // The two sides agree once all-null rows are dropped from both.
  bool ok_without_null_rows = true;
  std::string view;              // first view where the two sides differ
  AnswerSet secret;              // secret answers to the view query
  AnswerSet on_answer_instance;  // view evaluated on the secrecy answer instance
};

LeakageReport check_no_leakage(const Instance& d, const std::vector<ViewDef>& views,
                               const EnumerationOptions& opts = {});

} // namespace secview
