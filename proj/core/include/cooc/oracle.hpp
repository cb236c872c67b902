#pragma once

// Brute-force reference answers computed straight from the definitions:
// CO(P, i) is the number of transactions containing P and i. Used to check
// every engine; it shares no counting code with them.

#include "cooc/model.hpp"

namespace cooc {

CoCountTable oracle_co_counts(const TransactionDatabase& db, const Query& q);

TopKResult oracle_topk(const TransactionDatabase& db, const Query& q, const RankOrder& order);

}  // namespace cooc
