#pragma once

// One entry point over all six engines sharing a single set of indexes.

#include <array>
#include <optional>
#include <string_view>

#include "cooc/model.hpp"
#include "cooc/outcome.hpp"
#include "cooc/pitree.hpp"
#include "cooc/threshold.hpp"
#include "cooc/tidset.hpp"

namespace cooc {

enum class EngineKind { nt, nt_ta, nti, nti_ta, pt, pt_ta };

inline constexpr std::array<EngineKind, 6> kAllEngines{EngineKind::nt,  EngineKind::nt_ta, EngineKind::nti,
                                                       EngineKind::nti_ta, EngineKind::pt, EngineKind::pt_ta};

std::string_view engine_name(EngineKind kind);
std::optional<EngineKind> parse_engine(std::string_view name);

class QueryEngines {
public:
    /// Builds the rank order, the tidset index and the tree. `db` must
    /// outlive this object.
    explicit QueryEngines(const TransactionDatabase& db);
    QueryEngines(const TransactionDatabase& db, RankOrder order, TidSetIndex tidsets, PiTree tree);

    [[nodiscard]] QueryOutcome run(EngineKind kind, const Query& q, const TaOptions& options = {}) const;

    /// Canonicalizes `tokens` first; unknown tokens give an empty result.
    [[nodiscard]] QueryOutcome run(EngineKind kind, std::span<const std::string> tokens, std::size_t k) const;

    [[nodiscard]] const TransactionDatabase& db() const noexcept { return *db_; }
    [[nodiscard]] const RankOrder& order() const noexcept { return order_; }
    [[nodiscard]] const TidSetIndex& tidsets() const noexcept { return tidsets_; }
    [[nodiscard]] const PiTree& tree() const noexcept { return tree_; }

private:
    const TransactionDatabase* db_;
    RankOrder order_;
    TidSetIndex tidsets_;
    PiTree tree_;
};

}  // namespace cooc
