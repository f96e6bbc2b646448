#include "ckeval/report.hpp"

#include <array>
#include <map>

#include "ckeval/format.hpp"

namespace ckeval {

std::optional<Locale> parse_locale(std::string_view text) noexcept {
    if (text == "en") {
        return Locale::En;
    }
    if (text == "tr") {
        return Locale::Tr;
    }
    return std::nullopt;
}

std::string_view version_prefix(Locale locale) noexcept {
    return locale == Locale::Tr ? "SÜRÜM" : "VERSION";
}

std::string to_upper(std::string_view text, Locale locale) {
    // Two-byte UTF-8 lowercase letters used in Turkish and their uppercase forms.
    static const std::map<std::string_view, std::string_view> kUtf8Upper{
        {"ç", "Ç"}, {"ğ", "Ğ"}, {"ı", "I"}, {"ö", "Ö"}, {"ş", "Ş"}, {"ü", "Ü"}, {"â", "Â"}, {"î", "Î"}, {"û", "Û"}};
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c < 0x80) {
            if (c == 'i' && locale == Locale::Tr) {
                out += "İ";
            } else {
                out += (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : static_cast<char>(c);
            }
            ++i;
            continue;
        }
        std::size_t len = (c & 0xE0) == 0xC0 ? 2 : (c & 0xF0) == 0xE0 ? 3 : (c & 0xF8) == 0xF0 ? 4 : 1;
        std::string_view ch = text.substr(i, len);
        auto it = kUtf8Upper.find(ch);
        out += it == kUtf8Upper.end() ? ch : it->second;
        i += len;
    }
    return out;
}

std::string render_text(const Report& report) {
    std::string out = report.title;
    out += '\n';
    for (const auto& section : report.sections) {
        out += '\n';
        out += to_upper(section.heading, report.locale);
        out += '\n';
        for (const auto& line : section.lines) {
            out += ' ';
            out += line.key;
            if (line.value) {
                out += " : ";
                out += *line.value;
            }
            out += '\n';
        }
    }
    return out;
}

namespace {

struct AttributeText {
    std::string_view id;
    std::string_view en;
    std::string_view tr;
};

constexpr std::array<AttributeText, 12> kAttributes{{
    {"complexity", "Complexity", "Karmaşıklık"},
    {"understandability", "Understandability", "Anlaşılabilirlik"},
    {"testability", "Testability", "Test Edilebilirlik"},
    {"reusability", "Reusability", "Yeniden Kullanılabilirlik"},
    {"robustness", "Robustness", "Dayanıklılık"},
    {"faultLikelihood", "Fault likelihood", "Kod Hata Olma İhtimali"},
    {"maintenanceEffort", "Maintenance, repair and test effort", "Bakım, Onarım ve Test Faaliyetleri"},
    {"quality", "Quality level", "Kalite Düzeyi"},
    {"coupling", "Coupling level", "Bağımlılık Düzeyi"},
    {"modularDesign", "Modular design", "Modüler Tasarım"},
    {"inheritanceDepth", "Depth of inheritance tree", "Kalıtım Ağacının Derinliği"},
    {"methodCount", "Methods per class", "Sınıflardaki Metot Sayısı"},
}};

constexpr std::array<std::string_view, 5> kLevelEn{"Very low", "Low", "Normal", "High", "Very high"};
constexpr std::array<std::string_view, 5> kLevelTr{"Çok Düşük", "Düşük", "Normal", "Yüksek", "Çok Yüksek"};
constexpr std::array<std::string_view, 5> kEffortEn{"Very little", "Little", "Moderate", "Much", "Very much"};
constexpr std::array<std::string_view, 5> kEffortTr{"Çok Az", "Az", "Normal", "Çok", "Çok Fazla"};

std::string class_heading(Locale locale) {
    return locale == Locale::Tr ? "SINIF DEĞERLENDİRMESİ" : "CLASS ASSESSMENT";
}

} // namespace

std::string attribute_label(std::string_view attribute, Locale locale) {
    for (const auto& a : kAttributes) {
        if (a.id == attribute) {
            return std::string(locale == Locale::Tr ? a.tr : a.en);
        }
    }
    return std::string(attribute);
}

std::string level_label(std::string_view attribute, Level level, Locale locale) {
    const auto i = static_cast<std::size_t>(level);
    if (attribute == "maintenanceEffort") {
        return std::string(locale == Locale::Tr ? kEffortTr[i] : kEffortEn[i]);
    }
    if (attribute == "inheritanceDepth" && level == Level::Normal) {
        return locale == Locale::Tr ? "İstenen Aralıkta" : "In the desired range";
    }
    return std::string(locale == Locale::Tr ? kLevelTr[i] : kLevelEn[i]);
}

std::string join_versions(std::span<const std::string> names, Locale locale, TieStyle style) {
    const std::string sep = style == TieStyle::Space ? " " : (locale == Locale::Tr ? " ve " : " and ");
    std::string out;
    for (const auto& n : names) {
        out += out.empty() ? n : sep + n;
    }
    return out;
}

Report make_comparison_report(std::span<const VersionVerdict> verdicts, Locale locale) {
    const bool tr = locale == Locale::Tr;
    Report report{tr ? "DEĞERLENDİRME SONUÇLARI" : "EVALUATION RESULTS", {}, locale};
    for (const auto& v : verdicts) {
        const std::string metric(metric_name(v.metric));
        ReportSection s;
        s.heading = tr ? "ELDE EDİLEN BULGULAR " + metric + " METRİĞİ AÇISINDAN İNCELENDİĞİNDE,"
                       : "FINDINGS EXAMINED WITH RESPECT TO THE " + metric + " METRIC,";
        const auto& in = v.interpretation;
        // The Turkish effort lines list tied versions separated by a space only.
        const TieStyle effort_style = tr ? TieStyle::Space : TieStyle::Conjunction;
        s.lines = {
            {tr ? "EN KÜÇÜK değere sahip sürüm/ler" : "SMALLEST value version(s)",
             join_versions(v.min_versions, locale, TieStyle::Conjunction) + " (" + format_number(v.min_value) + ")"},
            {tr ? "EN BÜYÜK değere sahip sürüm/ler" : "LARGEST value version(s)",
             join_versions(v.max_versions, locale, TieStyle::Conjunction) + " (" + format_number(v.max_value) + ")"},
            {tr ? "Kod Kalitesi Bakımından;" : "In terms of code quality;", std::nullopt},
            {join_versions(in.quality_worst, locale, TieStyle::Conjunction),
             tr ? "En Karışık ve En Düşük" : "Most complex and lowest"},
            {join_versions(in.quality_best, locale, TieStyle::Conjunction),
             tr ? "En Az Karışık ve En Yüksek" : "Least complex and highest"},
            {tr ? "Geliştirilmesi, Bakım-Onarımı ve Test Faaliyetleri Bakımından Harcanak Zaman ve İş Gücü;"
                : "Time and effort spent on development, maintenance and testing;",
             std::nullopt},
            {join_versions(in.effort_most, locale, effort_style), tr ? "En Çok" : "Most"},
            {join_versions(in.effort_least, locale, effort_style), tr ? "En Az" : "Least"},
        };
        report.sections.push_back(std::move(s));
    }
    return report;
}

Report make_assessment_report(std::span<const Assessment> assessments, std::string_view rule_base, Locale locale) {
    const bool tr = locale == Locale::Tr;
    Report report{tr ? "DEĞERLENDİRME SONUÇLARI" : "EVALUATION RESULTS", {}, locale};
    for (const auto& a : assessments) {
        ReportSection s;
        const bool project = a.scope == kProjectScope;
        s.heading = project ? (tr ? "PROJE DEĞERLENDİRMESİ" : "PROJECT ASSESSMENT") : class_heading(locale);
        if (!project) {
            s.lines.push_back({tr ? "Sınıf" : "Class", a.scope});
        }
        s.lines.push_back({tr ? "Kural tabanı" : "Rule base", std::string(rule_base)});
        std::string facts;
        for (const auto& f : a.facts) {
            facts += (facts.empty() ? "" : ", ") + std::string(metric_name(f.metric)) + "=" + format_number(f.value);
        }
        s.lines.push_back({tr ? "Metrik değerleri" : "Metric values", facts});
        std::string fired;
        for (const auto& id : a.fired_rules) {
            fired += (fired.empty() ? "" : ", ") + id;
        }
        s.lines.push_back({tr ? "Uygulanan kurallar" : "Fired rules", fired.empty() ? "-" : fired});
        s.lines.push_back({tr ? "Çıkarımlar;" : "Conclusions;", std::nullopt});
        for (const auto& d : a.derived) {
            s.lines.push_back({attribute_label(d.attribute, locale), level_label(d.attribute, d.level, locale)});
        }
        report.sections.push_back(std::move(s));
    }
    return report;
}

Report make_filter_report(std::span<const RangePartition> partitions, Locale locale) {
    const bool tr = locale == Locale::Tr;
    Report report{tr ? "DEĞERLENDİRME SONUÇLARI" : "EVALUATION RESULTS", {}, locale};
    for (const auto& p : partitions) {
        ReportSection s;
        s.heading = std::string(metric_name(p.metric)) + ": " + p.condition.display();
        s.lines.push_back({(tr ? "Aralıktaki sınıflar (" : "Classes in range (") + std::to_string(p.in_range.size()) + ");",
                           std::nullopt});
        for (const auto& cv : p.in_range) {
            s.lines.push_back({cv.class_name, std::to_string(cv.value)});
        }
        s.lines.push_back({(tr ? "Aralık dışındaki sınıflar (" : "Classes out of range (") +
                               std::to_string(p.out_of_range.size()) + ");",
                           std::nullopt});
        for (const auto& cv : p.out_of_range) {
            s.lines.push_back({cv.class_name, std::to_string(cv.value)});
        }
        report.sections.push_back(std::move(s));
    }
    return report;
}

} // namespace ckeval
