#include "cooc/engine.hpp"

#include "cooc/naive.hpp"

namespace cooc {

std::string_view engine_name(EngineKind kind)
{
    switch (kind) {
    case EngineKind::nt: return "nt";
    case EngineKind::nt_ta: return "nt-ta";
    case EngineKind::nti: return "nti";
    case EngineKind::nti_ta: return "nti-ta";
    case EngineKind::pt: return "pt";
    case EngineKind::pt_ta: return "pt-ta";
    }
    return "?";
}

std::optional<EngineKind> parse_engine(std::string_view name)
{
    for (EngineKind kind : kAllEngines) {
        if (engine_name(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

QueryEngines::QueryEngines(const TransactionDatabase& db)
    : db_(&db), order_(build_rank_order(db)), tidsets_(build_tidsets(db)), tree_(build_pitree(db, order_))
{
}

QueryEngines::QueryEngines(const TransactionDatabase& db, RankOrder order, TidSetIndex tidsets, PiTree tree)
    : db_(&db), order_(std::move(order)), tidsets_(std::move(tidsets)), tree_(std::move(tree))
{
}

QueryOutcome QueryEngines::run(EngineKind kind, const Query& q, const TaOptions& options) const
{
    switch (kind) {
    case EngineKind::nt: return nt_query(*db_, q, order_);
    case EngineKind::nt_ta: return nt_ta_query(*db_, q, order_, options);
    case EngineKind::nti: return nti_query(*db_, tidsets_, q, order_);
    case EngineKind::nti_ta: return nti_ta_query(*db_, tidsets_, q, order_, options);
    case EngineKind::pt: return pt_query(tree_, q);
    case EngineKind::pt_ta: return pt_ta_query(tree_, q, options);
    }
    throw std::invalid_argument("unknown engine");
}

QueryOutcome QueryEngines::run(EngineKind kind, std::span<const std::string> tokens, std::size_t k) const
{
    auto q = canonicalize_query(tokens, *db_, order_, k);
    if (!q) {
        return {};
    }
    return run(kind, *q);
}

}  // namespace cooc
