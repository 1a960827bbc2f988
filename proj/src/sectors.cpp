#include "naturisk/sectors.hpp"

#include <cctype>

namespace naturisk {

const std::vector<SectorGroupInfo>& sector_groups() {
    static const std::vector<SectorGroupInfo> groups = {
        {"A01-03", 1, 3, "Crop, animal production, hunting and related services"},
        {"B05-B09", 5, 9, "Mining and quarrying"},
        {"C10-C12", 10, 12, "Manufacture of food products, beverages and tobacco"},
        {"C13-C18", 13, 18, "Manufacture of textiles, wearing apparel, leather, paper and related products"},
        {"C19", 19, 19, "Manufacture of coke and refined petroleum products"},
        {"C20", 20, 20, "Manufacture of chemicals and chemical products"},
        {"C21-C22", 21, 22, "Manufacture of pharmaceutical products and preparations, rubber and plastic products"},
        {"C23", 23, 23, "Manufacture of other non-metallic mineral products"},
        {"C24-C25", 24, 25, "Manufacture of basic and fabricated metal products, except machinery and equipment"},
        {"C26-C28", 26, 28, "Manufacture of computer, electronic, optical, electrical equipment and machinery"},
        {"C29-C30", 29, 30, "Manufacture of motor vehicles, trailers and semi-trailers and other transport equipment"},
        {"C31-33", 31, 33, "Manufacture of furniture, repair and installation of machinery and other manufacturing"},
        {"D35", 35, 35, "Electricity, gas, steam and air conditioning supply"},
        {"E36-E39", 36, 39, "Water supply; sewerage; waste management and remediation activities"},
        {"F41-F43", 41, 43, "Construction"},
        {"G45-G47", 45, 47, "Wholesale and retail trade; repair of motor vehicles and motorcycles"},
        {"H49", 49, 49, "Land transport and transport via pipelines"},
        {"H50", 50, 50, "Water transport"},
        {"H51", 51, 51, "Air transport"},
        {"H52-H53", 52, 53, "Warehousing and support activities for transportation; Postal and courier activities"},
        {"I55-I56", 55, 56, "Accommodation and Food Service Activities"},
        {"J58-J63", 58, 63, "Information and Communication"},
        {"K64-K66", 64, 66, "Financial and Insurance Activities"},
        {"L68", 68, 68, "Real Estate Activities"},
        {"M69-M75", 69, 75, "Professional, Scientific and Technical Activities"},
        {"N77-N82", 77, 82, "Administrative and Support Service Activities"},
        {"O84", 84, 84, "Public Administration and Defense; Compulsory Social Security"},
        {"P85", 85, 85, "Education"},
        {"Q86-Q88", 86, 88, "Human Health and Social Work Activities"},
        {"R90-R93", 90, 93, "Arts, Entertainment and Recreation"},
        {"S94-S96", 94, 96, "Other Service Activities"},
    };
    return groups;
}

bool is_valid_nace4(std::string_view nace4) {
    if (nace4.size() != 5 || nace4[2] != '.')
        return false;
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    return digit(nace4[0]) && digit(nace4[1]) && digit(nace4[3]) && digit(nace4[4]);
}

std::optional<std::string_view> sector_group_for(std::string_view nace4) {
    if (!is_valid_nace4(nace4))
        return std::nullopt;
    int division = (nace4[0] - '0') * 10 + (nace4[1] - '0');
    for (const auto& g : sector_groups())
        if (division >= g.division_lo && division <= g.division_hi)
            return g.code;
    return std::nullopt;
}

std::optional<std::string_view> sector_description(std::string_view group_code) {
    for (const auto& g : sector_groups())
        if (g.code == group_code)
            return g.description;
    return std::nullopt;
}

} // namespace naturisk
