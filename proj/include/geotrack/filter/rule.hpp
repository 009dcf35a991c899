#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace geotrack::filter {

// Where the pattern is pinned. A rule may additionally be pinned at the end
// (`anchored_end`), e.g. `|http://x.com/a.js|` is {start, end-anchored}.
enum class AnchorKind : std::uint8_t { none, start, end, domain };

enum class ThirdParty : std::uint8_t { unspecified, required, forbidden };

enum class ResourceType : std::uint8_t { script, image, stylesheet, xmlhttprequest, subdocument, other };

inline constexpr std::size_t kResourceTypeCount = 6;

std::string_view to_string(ResourceType type);
std::optional<ResourceType> resource_type_from_string(std::string_view name);

class ResourceTypeSet {
public:
    constexpr ResourceTypeSet() = default;
    static constexpr ResourceTypeSet all() { return ResourceTypeSet((1u << kResourceTypeCount) - 1); }

    constexpr void insert(ResourceType t) { bits_ |= bit(t); }
    constexpr void erase(ResourceType t) { bits_ &= static_cast<std::uint8_t>(~bit(t)); }
    constexpr bool contains(ResourceType t) const { return (bits_ & bit(t)) != 0; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr std::uint8_t bits() const { return bits_; }

    std::vector<ResourceType> members() const;

    friend constexpr bool operator==(ResourceTypeSet, ResourceTypeSet) = default;

private:
    constexpr explicit ResourceTypeSet(unsigned bits) : bits_(static_cast<std::uint8_t>(bits)) {}
    static constexpr std::uint8_t bit(ResourceType t) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(t)); }

    std::uint8_t bits_ = 0;
};

struct DomainConstraint {
    std::string domain;  // lowercase, never empty
    bool negated = false;

    friend bool operator==(const DomainConstraint&, const DomainConstraint&) = default;
};

// A rule is identified by where it came from.
struct RuleId {
    std::size_t line_number = 0;
    std::string raw_text;

    friend auto operator<=>(const RuleId&, const RuleId&) = default;
};

struct FilterRule {
    std::string raw_text;
    std::size_t line_number = 0;
    std::string pattern;  // anchors, `@@` and `$options` removed; original case
    AnchorKind anchor_kind = AnchorKind::none;
    bool anchored_end = false;
    bool is_exception = false;
    ThirdParty option_third_party = ThirdParty::unspecified;
    std::vector<DomainConstraint> option_domains;
    std::optional<ResourceTypeSet> option_types;  // nullopt: no type constraint
    bool case_sensitive = false;

    RuleId id() const { return {line_number, raw_text}; }

    friend bool operator==(const FilterRule&, const FilterRule&) = default;
};

enum class SkipReason : std::uint8_t {
    blank,
    comment,
    header,
    element_hiding,
    regex_literal,
    unsupported_option,
};

std::string_view to_string(SkipReason reason);

struct Skipped {
    SkipReason reason;
};

struct ParseError {
    std::string detail;
};

using ParseOutcome = std::variant<FilterRule, Skipped, ParseError>;

// Parses one line of an Adblock Plus filter list. Never throws on content.
ParseOutcome parse_filter_line(std::string_view line, std::size_t line_number);

}  // namespace geotrack::filter
