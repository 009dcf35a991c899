#include "geotrack/crawl/jsonl.hpp"

#include <fstream>

#include <json.hpp>

#include "geotrack/url.hpp"

namespace geotrack::crawl {

using nlohmann::json;

namespace {

class LineReader {
public:
    LineReader(const json& obj, std::size_t line) : obj_(obj), line_(line) {}

    template <typename T>
    T required(const char* key) const {
        const auto it = obj_.find(key);
        if (it == obj_.end() || it->is_null()) {
            throw IngestError(ErrorKind::parse, std::string("missing field '") + key + "'", line_);
        }
        return convert<T>(*it, key);
    }

    template <typename T>
    T optional(const char* key, T fallback) const {
        const auto it = obj_.find(key);
        if (it == obj_.end() || it->is_null()) {
            return fallback;
        }
        return convert<T>(*it, key);
    }

    std::optional<std::string> nullable_string(const char* key) const {
        const auto it = obj_.find(key);
        if (it == obj_.end() || it->is_null()) {
            return std::nullopt;
        }
        return convert<std::string>(*it, key);
    }

private:
    template <typename T>
    T convert(const json& value, const char* key) const {
        if constexpr (std::is_same_v<T, std::string>) {
            if (!value.is_string()) {
                throw IngestError(ErrorKind::parse, std::string("field '") + key + "' must be a string", line_);
            }
        } else {
            if (!value.is_number_integer()) {
                throw IngestError(ErrorKind::parse, std::string("field '") + key + "' must be an integer", line_);
            }
        }
        return value.get<T>();
    }

    const json& obj_;
    std::size_t line_;
};

}  // namespace

CrawlDataset ingest_jsonl(std::istream& in, std::string provenance) {
    std::vector<VisitRecord> visits;
    std::vector<HttpRequestRecord> requests;
    std::vector<CookieRecord> cookies;

    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        if (text.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        json obj;
        try {
            obj = json::parse(text);
        } catch (const json::parse_error& e) {
            throw IngestError(ErrorKind::parse, e.what(), line_no);
        }
        if (!obj.is_object()) {
            throw IngestError(ErrorKind::parse, "line is not a JSON object", line_no);
        }
        const LineReader r(obj, line_no);
        const auto kind = r.required<std::string>("kind");
        if (kind == "visit") {
            visits.push_back({r.required<VisitId>("visit_id"), r.required<std::string>("country"),
                              r.required<std::int64_t>("site_rank"), r.required<std::string>("site_domain"),
                              r.optional<std::string>("started_at", "")});
        } else if (kind == "request") {
            HttpRequestRecord rec{r.required<VisitId>("visit_id"), r.required<std::string>("url"),
                                  r.optional<std::string>("top_url", ""), r.nullable_string("referrer"),
                                  r.optional<std::string>("ts", "")};
            if (!parse_url(rec.url)) {
                throw IngestError(ErrorKind::parse, "url is not an absolute URL: " + rec.url, line_no);
            }
            requests.push_back(std::move(rec));
        } else if (kind == "cookie") {
            cookies.push_back({r.required<VisitId>("visit_id"), r.required<std::string>("domain"),
                               r.optional<std::string>("name", ""), r.optional<std::string>("ts", "")});
        } else {
            throw IngestError(ErrorKind::parse, "unknown kind '" + kind + "'", line_no);
        }
    }
    return CrawlDataset(std::move(visits), std::move(requests), std::move(cookies), std::move(provenance));
}

CrawlDataset ingest_jsonl(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IngestError(ErrorKind::io, "cannot open " + path.string());
    }
    return ingest_jsonl(in, "jsonl:" + path.filename().string());
}

void export_jsonl(const CrawlDataset& dataset, std::ostream& out) {
    for (const auto& v : dataset.visits()) {
        out << json{{"kind", "visit"},           {"visit_id", v.visit_id},       {"country", v.country},
                    {"site_rank", v.site_rank}, {"site_domain", v.site_domain}, {"started_at", v.started_at}}
                        .dump()
            << '\n';
    }
    for (const auto& r : dataset.requests()) {
        json referrer = r.referrer ? json(*r.referrer) : json(nullptr);
        out << json{{"kind", "request"},  {"visit_id", r.visit_id},        {"url", r.url},
                    {"top_url", r.top_url}, {"referrer", std::move(referrer)}, {"ts", r.ts}}
                        .dump()
            << '\n';
    }
    for (const auto& c : dataset.cookies()) {
        out << json{{"kind", "cookie"}, {"visit_id", c.visit_id}, {"domain", c.domain}, {"name", c.name}, {"ts", c.ts}}
                        .dump()
            << '\n';
    }
}

void export_jsonl(const CrawlDataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IngestError(ErrorKind::io, "cannot write " + path.string());
    }
    export_jsonl(dataset, out);
}

}  // namespace geotrack::crawl
