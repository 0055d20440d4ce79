#include <algorithm>

#include "hoed/error.hpp"
#include "hoed/panel.hpp"
#include "hoed/text.hpp"
#include "json.hpp"

namespace hoed {

namespace {

struct RegionEntry {
  const char* region;
  std::vector<const char*> members;
};

const std::vector<RegionEntry>& study_regions() {
  static const std::vector<RegionEntry> regions{
    {"Sub-Saharan Africa (SSA)",
     {"Angola", "Benin", "Botswana", "Burkina Faso", "Burundi", "Cameroon", "Cape Verde",
      "Central African Republic", "Chad", "Comoros", "Congo", "Côte d’Ivoire",
      "Democratic Republic of the Congo", "Djibouti", "Equatorial Guinea", "Eritrea", "Eswatini",
      "Ethiopia", "Gabon", "Gambia", "Ghana", "Guinea", "Guinea-Bissau", "Kenya", "Lesotho",
      "Liberia", "Madagascar", "Malawi", "Mali", "Mauritania", "Mauritius", "Mozambique",
      "Namibia", "Niger", "Nigeria", "Rwanda", "São Tomé and Príncipe", "Senegal", "Seychelles",
      "Sierra Leone", "Somalia", "South Africa", "South Sudan", "Sudan", "Tanzania", "Togo",
      "Uganda", "Zambia", "Zimbabwe"}},
    {"Middle East & North Africa (MENA)",
     {"Algeria", "Bahrain", "Egypt", "Iran", "Iraq", "Israel", "Jordan", "Kuwait", "Lebanon",
      "Libya", "Morocco", "Oman", "Palestine", "Qatar", "Saudi Arabia", "Syria", "Tunisia",
      "Turkey", "United Arab Emirates", "Yemen"}},
    {"Europe & Central Asia",
     {"Albania", "Armenia", "Austria", "Azerbaijan", "Belarus", "Belgium",
      "Bosnia and Herzegovina", "Bulgaria", "Croatia", "Cyprus", "Czech Republic", "Denmark",
      "Estonia", "Finland", "France", "Georgia", "Germany", "Greece", "Hungary", "Iceland",
      "Ireland", "Italy", "Kazakhstan", "Kosovo", "Kyrgyzstan", "Latvia", "Lithuania",
      "Luxembourg", "Malta", "Moldova", "Montenegro", "Netherlands", "North Macedonia", "Norway",
      "Poland", "Portugal", "Romania", "Russia", "Serbia", "Slovakia", "Slovenia", "Spain",
      "Sweden", "Switzerland", "Tajikistan", "Turkmenistan", "Ukraine", "United Kingdom",
      "Uzbekistan"}},
    {"South/East Asia & Pacific",
     {"Afghanistan", "Australia", "Bangladesh", "Bhutan", "Brunei", "Cambodia", "China", "Fiji",
      "India", "Indonesia", "Japan", "Laos", "Malaysia", "Maldives", "Mongolia", "Myanmar",
      "Nepal", "New Zealand", "North Korea", "Pakistan", "Papua New Guinea", "Philippines",
      "Samoa", "Singapore", "Solomon Islands", "South Korea", "Sri Lanka", "Taiwan", "Thailand",
      "Timor-Leste", "Tonga", "Vanuatu", "Vietnam"}},
    {"North America",
     {"Canada", "United States", "Mexico"}},
    {"Latin America & Caribbean",
     {"Antigua and Barbuda", "Argentina", "Bahamas", "Barbados", "Belize", "Bolivia", "Brazil",
      "Chile", "Colombia", "Costa Rica", "Cuba", "Dominica", "Dominican Republic", "Ecuador",
      "El Salvador", "Grenada", "Guatemala", "Guyana", "Haiti", "Honduras", "Jamaica", "Nicaragua",
      "Panama", "Paraguay", "Peru", "Saint Kitts and Nevis", "Saint Lucia",
      "Saint Vincent and the Grenadines", "Suriname", "Trinidad and Tobago", "Uruguay",
      "Venezuela"}},
  };
  return regions;
}

}  // namespace

RegionMap RegionMap::study_sample() {
  std::map<std::string, std::string> m;
  for (const auto& r : study_regions())
    for (const char* e : r.members) m.emplace(e, r.region);
  return RegionMap(std::move(m));
}

RegionMap RegionMap::parse(std::string_view content) {
  const std::string trimmed = text::trim(content);
  std::map<std::string, std::string> m;
  if (!trimmed.empty() && trimmed.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(trimmed);
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::Schema, std::string("region map JSON: ") + e.what());
    }
    for (const auto& [region, members] : doc.items()) {
      if (!members.is_array()) throw Error(ErrorKind::Schema, "region map: '" + region + "' must list entities");
      for (const auto& e : members) {
        if (!e.is_string()) throw Error(ErrorKind::Schema, "region map: entity names must be strings");
        if (!m.emplace(e.get<std::string>(), region).second)
          throw Error(ErrorKind::Duplicate, "region map: entity '" + e.get<std::string>() + "' listed twice");
      }
    }
    return RegionMap(std::move(m));
  }
  auto rows = text::parse_csv(content);
  if (!rows.empty() && rows.front().size() == 2 && text::trim(rows.front()[0]) == "entity") rows.erase(rows.begin());
  for (const auto& row : rows) {
    if (row.size() != 2) throw Error(ErrorKind::Schema, "region map CSV rows must be entity,region");
    if (!m.emplace(text::trim(row[0]), text::trim(row[1])).second)
      throw Error(ErrorKind::Duplicate, "region map: entity '" + text::trim(row[0]) + "' listed twice");
  }
  return RegionMap(std::move(m));
}

}  // namespace hoed
