#include <gtest/gtest.h>

#include <algorithm>
#include <cctype>
#include <random>

#include "geotrack/domain/party.hpp"
#include "support/paths.hpp"

using namespace geotrack::domain;

namespace {

const PublicSuffixTable& table() {
    static const auto t = PublicSuffixTable::load(geotrack::testing::data_file("public_suffix_list.dat"));
    return t;
}

Party party(std::string_view site, std::string_view record, PartyMode mode) {
    return classify_party(site, record, mode, table()).value;
}

constexpr PartyMode kModes[] = {PartyMode::paper_containment, PartyMode::registrable_domain};

}  // namespace

TEST(Party, AmazonWorkedExamples) {
    for (auto mode : kModes) {
        EXPECT_EQ(party("amazon.de", "fls-eu.amazon.de", mode), Party::first_party) << to_string(mode);
        EXPECT_EQ(party("amazon.de", "zanox.com", mode), Party::third_party) << to_string(mode);
        EXPECT_EQ(party("amazon.de", "https://fls-eu.amazon.de/1/batch/1/OP/A1PA6795UKMFR9", mode),
                  Party::first_party);
        EXPECT_EQ(party("amazon.de", "https://www.zanox.com/ppv/?x=1", mode), Party::third_party);
        EXPECT_EQ(party("amazon.de", ".amazon.de", mode), Party::first_party);
    }
}

TEST(Party, LabelCarriesMode) {
    const auto l = classify_party("amazon.de", "zanox.com", PartyMode::paper_containment, table());
    EXPECT_EQ(l.mode, PartyMode::paper_containment);
    EXPECT_TRUE(l.is_third_party());
}

TEST(Party, ModesDivergeOnSubdomainSites) {
    EXPECT_EQ(party("a.example.com", "b.example.com", PartyMode::paper_containment), Party::third_party);
    EXPECT_EQ(party("a.example.com", "b.example.com", PartyMode::registrable_domain), Party::first_party);
}

TEST(Party, ContainmentIsLabelAligned) {
    EXPECT_EQ(party("amazon.de", "notamazon.de", PartyMode::paper_containment), Party::third_party);
    EXPECT_EQ(party("www.amazon.de", "images.amazon.de", PartyMode::paper_containment), Party::first_party);
    EXPECT_EQ(containment_base("www.amazon.de"), "amazon.de");
    EXPECT_EQ(containment_base("amazon.de"), "amazon.de");
}

TEST(Party, IpLiterals) {
    for (auto mode : kModes) {
        EXPECT_EQ(party("192.0.2.10", "192.0.2.10", mode), Party::first_party);
        EXPECT_EQ(party("realestate.com.au", "192.0.2.10", mode), Party::third_party);
        EXPECT_EQ(party("192.0.2.10", "192.0.2.11", mode), Party::third_party);
    }
}

TEST(Party, MalformedRecords) {
    EXPECT_THROW(classify_party("amazon.de", "", PartyMode::registrable_domain, table()), MalformedHostname);
    EXPECT_THROW(classify_party("", "zanox.com", PartyMode::paper_containment, table()), MalformedHostname);
    EXPECT_THROW(record_host("https:///nohost"), MalformedHostname);
}

TEST(Party, RecordHost) {
    EXPECT_EQ(record_host(".Example.COM"), "example.com");
    EXPECT_EQ(record_host("https://A.b.com:8080/x"), "a.b.com");
    EXPECT_EQ(record_host("cdn.net"), "cdn.net");
}

TEST(Party, ModeNames) {
    EXPECT_EQ(party_mode_from_string("paper_containment"), PartyMode::paper_containment);
    EXPECT_EQ(party_mode_from_string("registrable_domain"), PartyMode::registrable_domain);
    EXPECT_EQ(party_mode_from_string("psl"), PartyMode::registrable_domain);
    EXPECT_EQ(party_mode_from_string("paper"), PartyMode::paper_containment);
    EXPECT_FALSE(party_mode_from_string("bogus"));
}

// On sites that are their own registrable domain the two modes agree.
TEST(Party, ModesAgreeOnRegistrableSites) {
    const char* sites[] = {"example.com", "bbc.co.uk", "yahoo.co.jp", "news.com.au", "amazon.de"};
    const char* prefixes[] = {"", "www.", "a.b.", "cdn-"};
    const char* others[] = {"example.com", "bbc.co.uk", "co.uk", "example.org", "yahoo.co.jp", "com.au"};
    std::mt19937 rng(5);
    for (int i = 0; i < 500; ++i) {
        const std::string site = sites[rng() % 5];
        const std::string host = std::string(prefixes[rng() % 4]) + (rng() % 2 ? site : others[rng() % 6]);
        EXPECT_EQ(party(site, host, PartyMode::paper_containment), party(site, host, PartyMode::registrable_domain))
            << site << " vs " << host;
    }
}

TEST(Party, SelfIsFirstParty) {
    for (auto mode : kModes) {
        for (const char* site : {"example.com", "www.example.com", "a.b.example.co.uk", "192.0.2.1"}) {
            EXPECT_EQ(party(site, site, mode), Party::first_party) << site;
        }
    }
}

TEST(Party, RegistrableFirstPartyImpliesContainment) {
    const char* sites[] = {"example.com", "www.example.com", "bbc.co.uk", "shop.news.com.au", "amazon.de"};
    const char* hosts[] = {"example.com",    "img.example.com", "www.bbc.co.uk", "static.bbc.co.uk",
                           "news.com.au",    "shop.news.com.au", "x.shop.news.com.au", "fls-eu.amazon.de",
                           "amazon.de",      "notamazon.de"};
    for (const char* site : sites) {
        for (const char* host : hosts) {
            if (party(site, host, PartyMode::registrable_domain) == Party::first_party
                && registrable_domain(site, table()).registrable && registrable_domain(host, table()).registrable
                && (std::string_view(host).ends_with(containment_base(site)))) {
                EXPECT_EQ(party(site, host, PartyMode::paper_containment), Party::first_party) << site << " " << host;
            }
        }
    }
}

TEST(Party, CookieDotAndCaseDoNotMatter) {
    const char* hosts[] = {"example.com", "ads.example.com", "tracker.net", "bbc.co.uk"};
    for (auto mode : kModes) {
        for (const char* host : hosts) {
            const auto plain = party("www.example.com", host, mode);
            EXPECT_EQ(party("www.example.com", std::string(".") + host, mode), plain) << host;
            std::string upper(host);
            std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
            EXPECT_EQ(party("WWW.Example.COM", upper, mode), plain) << host;
        }
    }
}
