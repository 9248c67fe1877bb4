#!/usr/bin/env python3
"""Write fixtures/config/<platform>.json crawl plans for all 43 platforms.

Allow/blocklists are the published URL-substring filters for each platform.
Seed links are best-effort canonical policy URLs (ToS / community guidelines
/ help center); the original seed tables were not machine-readable in the
dataset release, so these may need refreshing before a live crawl.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
CONFIG = ROOT / "fixtures" / "config"

# platform -> (seeds, allowlist, blocklist)
PLANS = {
    "facebook": (
        ["https://www.facebook.com/terms.php",
         "https://transparency.fb.com/policies/community-standards/",
         "https://www.facebook.com/help/"],
        ["facebook.com", "fb.com", "meta"],
        [".com/news", ".com/formedia", ".com/journalismproject"],
    ),
    "youtube": (
        ["https://www.youtube.com/t/terms",
         "https://www.youtube.com/howyoutubeworks/policies/community-guidelines/",
         "https://support.google.com/youtube/"],
        ["support.google.com", "transparencyreport.google.com",
         "policies.google.com", "youtube"],
        [".com/@", "/channel", "/user/", "/feed/", "/jobs/", "/trends/",
         "/shorts/", "/topic/"],
    ),
    "instagram": (
        ["https://help.instagram.com/581066165581870",
         "https://help.instagram.com/477434105621119",
         "https://help.instagram.com/"],
        ["help.instagram.com", "facebook.com/terms", "facebook.com/business/",
         "fb.com", "facebook.com/formedia"],
        [],
    ),
    "twitter": (
        ["https://twitter.com/en/tos",
         "https://help.twitter.com/en/rules-and-policies",
         "https://help.twitter.com/en"],
        ["twitter.com"],
        ["brand.twitter.com"],
    ),
    "linkedin": (
        ["https://www.linkedin.com/legal/user-agreement",
         "https://www.linkedin.com/legal/professional-community-policies",
         "https://www.linkedin.com/help/linkedin"],
        ["linkedin.com"],
        [".com/checkpoint", ".com/uas"],
    ),
    "wikipedia": (
        ["https://foundation.wikimedia.org/wiki/Policy:Terms_of_Use",
         "https://meta.wikimedia.org/wiki/Policy",
         "https://foundation.wikimedia.org/wiki/Policies"],
        ["policy", "meta.wikimedia", "foundation.wikimedia"],
        ["/Minutes", "/Resolution", ":Contributions", "/User", "CentralAuth/",
         "/Meetings", "Wikimedia_Foundation", "/Agendas/", "/Archive",
         "/Requests_for"],
    ),
    "amazon": (
        ["https://www.amazon.com/gp/help/customer/display.html?nodeId=508088",
         "https://www.amazon.com/gp/help/customer/display.html?nodeId=GLSBYFE9MGKKQXXM",
         "https://aws.amazon.com/aup/"],
        ["amazon.com/gp/help", "aws.amazon.com/aup", "aws.amazon.com/terms",
         "amazonregistry.com/legaldocs"],
        ["audible.com", "comixology.com", "bookdepository.com", "amazon.jobs",
         "woot.com", ".com/gp/customer-reviews", ".com/product",
         "americanexpress.com", "goodreads.com", "amazon.science",
         "brandservices.amazon.sg", "fabric.com"],
    ),
    "pinterest": (
        ["https://policy.pinterest.com/en/terms-of-service",
         "https://policy.pinterest.com/en/community-guidelines",
         "https://help.pinterest.com/en"],
        ["pinterest.com"],
        [],
    ),
    "github": (
        ["https://docs.github.com/en/site-policy/github-terms/github-terms-of-service",
         "https://docs.github.com/en/site-policy/acceptable-use-policies/github-acceptable-use-policies",
         "https://support.github.com/"],
        ["docs.github.com", "bounty.github.com", "github.com/github/dmca/raw",
         "support.github.com", "help.github.com", "github.com/github/docs"],
        [],
    ),
    "reddit": (
        ["https://www.redditinc.com/policies/user-agreement",
         "https://www.redditinc.com/policies/content-policy",
         "https://www.reddithelp.com/hc/en-us"],
        ["redditinc.com", "reddit.zendesk", "reddit.com/wiki", "reddithelp.com",
         "/policies/", "www.reddit.com/r/reddit",
         "www.reddit.com/r/announcements", "www.reddit.com/r/modnews",
         "reddit.com/r/blog/", "reddit.com/r/automoderator"],
        ["/login", "/user/", "/rest"],
    ),
    "vimeo": (
        ["https://vimeo.com/terms",
         "https://vimeo.com/help/guidelines",
         "https://help.vimeo.com/hc/en-us"],
        ["help.vimeo.com", "vimeo.zendesk.com/hc", "vimeo.com/help",
         "vimeo.com/terms", "vimeo.com/privacy", "vimeo.com/dmca"],
        ["onetrust.com", "onetrustpro.com", "/blog/post", "apple.com",
         "/stock", "/channels", "/live", "/ott", "/create", "/ondemand",
         "/careers", "/solutions", "/watch", "vimeostatus.com",
         "facebook.com", "cookiepedia", "developer.vimeo", "/business"],
    ),
    "wordpress": (
        ["https://wordpress.com/tos/",
         "https://wordpress.com/support/user-guidelines/",
         "https://wordpress.com/support/"],
        ["wordpress.com/tos", "wordpress.com/support", "automattic",
         "com/abuse", "terms-of-service"],
        [],
    ),
    "msn": (
        ["https://www.microsoft.com/en-us/servicesagreement",
         "https://www.microsoft.com/en-us/legal",
         "https://www.msn.com/en-us/community"],
        ["/servicesagreement", "/community", "/enduserterms",
         "/law-enforcement-requests-report", "/terms-of-use", "/family-hub",
         "/maps/", "blogs.microsoft.com", "/legal", "/policies",
         "microsoft.com", "msn.com"],
        ["/product", "/store/", "/p/", "/d/", "/security", "dynamics.",
         "/solutions", "/story", "powerbi", "/account-billing", "powerapps",
         "optimizely.com", "xbox", "skype"],
    ),
    "tiktok": (
        ["https://www.tiktok.com/legal/page/us/terms-of-service/en",
         "https://www.tiktok.com/community-guidelines/en/",
         "https://support.tiktok.com/en/safety-hc"],
        ["/legal", "/copyright-policy", "/terms-of-use",
         "support.tiktok.com/en/safety", "tiktok.com/safety",
         "tiktok.com/community-guidelines", "tiktok.com/transparency"],
        ["gnu.org", "opensource.org", "facebook.com", "mozilla.org",
         "spdx.org", "apache.org", "pta.org", "connectsafely.org",
         "988lifeline.org", "missingkids.org", "vimeo.com",
         "crisistextline.org", "iwf.org", "fosi.org", "newrelic.com",
         "samhsa.gov", "teamhalo.org", "ca.gov", "consumerfinance.gov",
         "gavi.org", "oag.ca.org", "apple.com", "vaccinesafetynet.org",
         "nielson.com"],
    ),
    "xvideos": (
        ["https://info.xvideos.com/legal/tos/",
         "https://info.xvideos.com/"],
        ["info.xvideos.com"],
        [],
    ),
    "tumblr": (
        ["https://www.tumblr.com/policy/en/terms-of-service",
         "https://www.tumblr.com/policy/en/community",
         "https://help.tumblr.com/hc/en-us"],
        ["tumblr.com"],
        [".com/theme", ".com/docs", "-credits?"],
    ),
    "pornhub": (
        ["https://www.pornhub.com/information/terms",
         "https://help.pornhub.com/hc/en-us"],
        ["pornhub.com/information", "help.pornhub.com"],
        [],
    ),
    "nytimes": (
        ["https://help.nytimes.com/hc/en-us/articles/115014893428-Terms-of-Service",
         "https://www.nytco.com/company/standards-ethics/",
         "https://help.nytimes.com/hc/en-us"],
        ["nytimes.com", "nytco.com"],
        ["/wirecutter", "cooking.", "/puzzles", "/games", "nytimes.com/20"],
    ),
    "flickr": (
        ["https://www.flickr.com/help/terms",
         "https://www.flickr.com/help/guidelines",
         "https://www.flickrhelp.com/hc/en-us"],
        ["flickr", "smugmug"],
        ["/photos", "/explore", "/events", "/commons", "/map", "apple.com",
         "facebook.com", "/cameras", "/prints", "/create", "/jobs",
         "/account"],
    ),
    "fandom": (
        ["https://www.fandom.com/terms-of-use",
         "https://community.fandom.com/wiki/Help:Community_guidelines",
         "https://www.fandom.com/community-creation-policy"],
        ["fandom.com/wiki/Copyright", "fandom.com/wiki/Help:",
         "fandom.com/wiki/COPPA", "fandom.com/terms-of-use",
         "fandom.com/wiki/Licensing", ":Designated_agent",
         "fandom.com/wiki/DMCA", "fandom.com/community-creation-policy",
         "fandom.com/privacy-policy", "fandom.com/wiki/LGBTQIA"],
        ["action=edit", "/articles", ":Index", "Special:Contributions",
         "/Talk", "reddit.com"],
    ),
    "ebay": (
        ["https://www.ebay.com/help/policies/member-behaviour-policies/user-agreement?id=4259",
         "https://www.ebay.com/help/policies/default/ebays-rules-policies?id=4205",
         "https://pages.ebay.com/securitycenter/"],
        ["pages.ebay.com/seller-center", "ebay.com/help/policies",
         "pages.ebay.com/securitycenter", "ebayinc.com/impact"],
        [],
    ),
    "imdb": (
        ["https://www.imdb.com/conditions",
         "https://help.imdb.com/imdb"],
        ["imdb.com"],
        [".com/event", ".com/chart", "developer.imdb"],
    ),
    "medium": (
        ["https://policy.medium.com/medium-terms-of-service-9db0094a1e0f",
         "https://policy.medium.com/medium-rules-30e5502c4eb4",
         "https://help.medium.com/hc/en-us"],
        ["policy.medium.com", "help.medium.com", "medium.com/policy",
         "/Medium/Policy", "@Medium", "-terms-of-service"],
        ["/tag"],
    ),
    "soundcloud": (
        ["https://soundcloud.com/terms-of-use",
         "https://soundcloud.com/community-guidelines",
         "https://help.soundcloud.com/hc/en-us"],
        ["soundcloud.com"],
        [],
    ),
    "aliexpress": (
        ["https://terms.alicdn.com/legal-agreement/terms/suit_bu1_aliexpress/suit_bu1_aliexpress201204180199/20120418019901.html",
         "https://customerservice.aliexpress.com/home"],
        ["terms.alicdn", "customerservice.aliexpress", "service.aliexpress",
         "campaign.aliexpress", "rule.alibaba"],
        [],
    ),
    "twitch": (
        ["https://www.twitch.tv/p/en/legal/terms-of-service/",
         "https://www.twitch.tv/p/en/legal/community-guidelines/",
         "https://help.twitch.tv/s/"],
        ["twitch.tv"],
        ["blog.twitch.tv", "/jobs"],
    ),
    "stackoverflow": (
        ["https://stackoverflow.com/legal/terms-of-service/public",
         "https://stackoverflow.com/conduct",
         "https://stackoverflow.com/help"],
        ["stackoverflow.com", "stackexchange.com", "stackoverflow.blog"],
        ["/login?", ".stackoverflow", ".stackexchange", "/questions/", "/q/",
         "/signup?", "/author/"],
    ),
    "archive": (
        ["https://archive.org/about/terms.php",
         "https://help.archive.org/"],
        ["archive.org/about", "help.archive"],
        ["/details/", "blog.archive"],
    ),
    "theguardian": (
        ["https://www.theguardian.com/help/terms-of-service",
         "https://www.theguardian.com/community-standards",
         "https://www.theguardian.com/info"],
        ["theguardian.com/info", "theguardian.com/community",
         "theguardian.com/help", "manage.theguardian.com",
         "theguardian.com/gmg", "theguardian.com/about",
         "theguardian.com/gnm"],
        ["syndication.theguardian"],
    ),
    "bbc": (
        ["https://www.bbc.co.uk/usingthebbc/terms-of-use/",
         "https://www.bbc.co.uk/usingthebbc/"],
        ["bbc.co", "bbcstudios.com"],
        ["/news/", "/sport/", "search.bbc"],
    ),
    "xhamster": (
        ["https://xhamster.com/info/terms",
         "https://xhamster.com/info/community-guidelines"],
        ["xhamster.com/info", "suggestions.xhamster.com/tos"],
        ["/forum"],
    ),
    "quora": (
        ["https://www.quora.com/about/tos",
         "https://help.quora.com/hc/en-us"],
        ["help.quora.com", "quora.com/about"],
        [],
    ),
    "w3": (
        ["https://www.w3.org/Consortium/Legal/",
         "https://www.w3.org/Consortium/cepc/"],
        ["w3.org/Consortium", "w3c.github"],
        [],
    ),
    "sourceforge": (
        ["https://slashdotmedia.com/terms-of-use/",
         "https://sourceforge.net/support"],
        ["slashdotmedia.com/terms-of-use", "/documentation", "/security",
         "/support"],
        [],
    ),
    "indeed": (
        ["https://www.indeed.com/legal",
         "https://support.indeed.com/hc/en-us"],
        ["indeed.com/legal", "indeed.com/support", "/legal/anti-slavery/",
         "support.indeed.com"],
        ["login", "my.indeed"],
    ),
    "etsy": (
        ["https://www.etsy.com/legal/terms-of-use",
         "https://www.etsy.com/legal/policy/community-policy/",
         "https://www.etsy.com/seller-handbook"],
        ["etsy.com/legal", "/seller-handbook"],
        ["/c/", "/search/", "/listing/", "/featured/", "/market/"],
    ),
    "sciencedirect": (
        ["https://www.elsevier.com/legal/elsevier-website-terms-and-conditions",
         "https://www.elsevier.com/about/policies"],
        ["elsevier.com/legal", "elsevier.com/about", "elsevier.com/connect",
         "elsevier.com/authors"],
        [".docx"],
    ),
    "booking": (
        ["https://www.booking.com/content/terms.html",
         "https://www.booking.com/trust-and-safety.html"],
        ["booking.com/content", "reviews_guidelines", "trust_and_safety",
         "termsandconditions", "/trust"],
        [],
    ),
    "imgur": (
        ["https://imgur.com/tos",
         "https://imgur.com/rules",
         "https://help.imgur.com/hc/en-us"],
        ["imgur.com/tos", "help.imgur", "imgur.com/rules",
         "https://imgur.com/removalrequest"],
        [],
    ),
    "spankbang": (
        ["https://spankbang.com/info/terms",
         "https://spankbang.com/info/dmca"],
        ["spankbang.com/info"],
        [],
    ),
    "researchgate": (
        ["https://www.researchgate.net/terms-of-service",
         "https://www.researchgate.net/community-guidelines"],
        ["*"],
        [],
    ),
    "washingtonpost": (
        ["https://www.washingtonpost.com/terms-of-service/",
         "https://www.washingtonpost.com/discussions/2021/11/23/discussion-submission-guidelines/"],
        ["washingtonpost.com/terms", "washingtonpost.com/info",
         "washingtonpost.com/policies", "washingtonpost.com/discussions"],
        [],
    ),
    "xnxx": (
        ["https://info.xnxx.com/legal/tos",
         "https://info.xnxx.com/"],
        ["info.xnxx"],
        [],
    ),
}


def main() -> int:
    if len(PLANS) != 43:
        print(f"{len(PLANS)} platforms != 43", file=sys.stderr)
        return 1
    CONFIG.mkdir(parents=True, exist_ok=True)
    for platform, (seeds, allow, block) in PLANS.items():
        doc = {
            "platform": platform,
            "seeds": [{"url": u} for u in seeds],
            "allow": allow,
            "block": block,
            "max_hops": 2,
            "backend": "direct_http",
        }
        path = CONFIG / f"{platform}.json"
        path.write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")
    print(f"wrote {len(PLANS)} configs to {CONFIG}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
