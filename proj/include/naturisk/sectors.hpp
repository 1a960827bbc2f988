#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace naturisk {

// ECB/ESRB-style industry grouping: NACE sections with manufacturing (C)
// and transport (H) broken into subsections, 31 groups total.
struct SectorGroupInfo {
    std::string_view code;
    int division_lo; // inclusive 2-digit NACE division range
    int division_hi;
    std::string_view description;
};

const std::vector<SectorGroupInfo>& sector_groups();

// Group code for a "dd.dd" NACE level-4 code; nullopt when the division is
// not covered by the 31-group table.
std::optional<std::string_view> sector_group_for(std::string_view nace4);

std::optional<std::string_view> sector_description(std::string_view group_code);

// True when the string matches the "dd.dd" pattern.
bool is_valid_nace4(std::string_view nace4);

} // namespace naturisk
