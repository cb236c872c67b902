#pragma once

// Full-scan engines: NT counts co-occurrences over every transaction that
// contains the query; NT-TA does the same but stops admitting candidates once
// the top-k bound separates from everything else.

#include <optional>
#include <span>

#include "cooc/model.hpp"
#include "cooc/outcome.hpp"
#include "cooc/threshold.hpp"

namespace cooc {

QueryOutcome nt_query(const TransactionDatabase& db, const Query& q, const RankOrder& order);

QueryOutcome nt_ta_query(const TransactionDatabase& db, const Query& q, const RankOrder& order,
                         const TaOptions& options = {});

namespace detail {

/// Scan shared with the tidset engines. With `subset` set, only those TIDs
/// are visited and each is assumed to contain the query.
QueryOutcome scan_count(const TransactionDatabase& db, const Query& q, const RankOrder& order,
                        std::optional<std::span<const Tid>> subset);

QueryOutcome scan_count_ta(const TransactionDatabase& db, const Query& q, const RankOrder& order,
                           std::optional<std::span<const Tid>> subset, const TaOptions& options);

}  // namespace detail
}  // namespace cooc
