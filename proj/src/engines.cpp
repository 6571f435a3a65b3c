#include "eap/engines.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace eap {

    std::string_view to_string(Variant v) noexcept {
        switch (v) {
            case Variant::Base: return "base";
            case Variant::EA: return "ea";
            case Variant::EAPruned: return "eapruned";
            case Variant::PrunedOnly: return "pruned";
        }
        return "?";
    }

    std::optional<Variant> parse_variant(std::string_view name) {
        std::string n(name);
        std::ranges::transform(n, n.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        std::erase(n, '-');
        std::erase(n, '_');
        if (n == "base") { return Variant::Base; }
        if (n == "ea") { return Variant::EA; }
        if (n == "eapruned" || n == "eap") { return Variant::EAPruned; }
        if (n == "pruned" || n == "prunedonly") { return Variant::PrunedOnly; }
        return std::nullopt;
    }

    EngineResult compute_base(const AnyRecurrence& rec) {
        return std::visit([](const auto& r) { return compute_base(r); }, rec);
    }

    EngineResult compute_ea(const AnyRecurrence& rec, std::size_t w, Cutoff co) {
        return std::visit([&](const auto& r) { return compute_ea(r, w, co); }, rec);
    }

    EngineResult compute_eapruned(const AnyRecurrence& rec, std::size_t w, Cutoff co) {
        return std::visit([&](const auto& r) { return compute_eapruned(r, w, co); }, rec);
    }

    double diagonal_upper_bound(const AnyRecurrence& rec) {
        return std::visit([](const auto& r) { return diagonal_upper_bound(r); }, rec);
    }

    EngineResult compute_pruned_only(const AnyRecurrence& rec, std::size_t w) {
        return std::visit([&](const auto& r) { return compute_pruned_only(r, w); }, rec);
    }

    EngineResult distance(const DistanceSpec& spec, Variant variant,
                          std::span<const double> s, std::span<const double> t, Cutoff co) {
        const auto rec = make_recurrence(spec, s, t);
        const std::size_t w = spec.effective_window(std::max(s.size(), t.size()));
        return std::visit([&](const auto& r) -> EngineResult {
            switch (variant) {
                case Variant::Base:
                    if (spec.window) { return compute_ea(r, w, Cutoff::none()); }
                    return compute_base(r);
                case Variant::EA: return compute_ea(r, w, co);
                case Variant::EAPruned: return compute_eapruned(r, w, co);
                case Variant::PrunedOnly: return compute_pruned_only(r, w);
            }
            throw SpecError("unknown engine variant");
        }, rec);
    }

} // namespace eap
