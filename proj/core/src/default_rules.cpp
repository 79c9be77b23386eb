#include "maskclaw/rule_store.hpp"

namespace maskclaw {

// Stock policy corpus. Grouped by app family first, generic floor rules last.
// Counts are load-bearing for the shipped-corpus tests: 12 Ask, 11 Allow,
// 17 Mask.
const std::string& default_rules_text() {
  static const std::string text = R"RULES(
{"id":"ask_med_claim_share","scope":{"app":"medchat","persona":"A","recipient":"external_business","action":"send_screenshot"},"trigger":{"field_types":["medical"]},"action":"Ask","priority":8,"rationale":"claim reviewers may see records, but the patient approves each disclosure"}
{"id":"mask_med_chat_unknown","scope":{"app":"medchat","persona":"A","recipient":"external_unknown","action":"send_screenshot"},"trigger":{"field_types":["medical","id_number"]},"action":"Mask","priority":8,"rationale":"diagnosis details never go to strangers in chat"}
{"id":"allow_med_self_archive","scope":{"app":"medchat","persona":"A","recipient":"self","action":"save_local"},"trigger":{"field_types":["medical"]},"action":"Allow","priority":6,"rationale":"patients keep their own records"}
{"id":"ask_hospital_record_export","scope":{"app":"hospital_oa","persona":"A","recipient":"external_business","action":"send_screenshot"},"trigger":{"field_types":["medical","id_number"]},"action":"Ask","priority":7,"rationale":"record exports to partner clinics need a named approver"}
{"id":"mask_hospital_badge","scope":{"app":"hospital_oa","recipient":"external_unknown","action":"send_screenshot"},"trigger":{"field_types":["id_number"]},"action":"Mask","priority":6,"rationale":"staff ids stay off outbound captures"}
{"id":"allow_hospital_internal_sync","scope":{"app":"hospital_oa","persona":"A","recipient":"trusted_internal","action":"sync_cloud"},"trigger":{"semantic_tags":["schedule_page"]},"action":"Allow","priority":5,"rationale":"shift schedules circulate freely inside the ward"}
{"id":"ask_insure_claim_photo","scope":{"app":"insure_app","persona":"A","recipient":"external_business","action":"send_screenshot"},"trigger":{"field_types":["medical"]},"action":"Ask","priority":7,"rationale":"adjusters request proof; the insured confirms what leaves the device"}
{"id":"mask_insure_id_public","scope":{"app":"insure_app","recipient":"external_unknown","action":"post_public"},"trigger":{"field_types":["id_number","phone"]},"action":"Mask","priority":7,"rationale":"policy screenshots posted for help still hide identity fields"}
{"id":"mask_shop_ship_pii","scope":{"app":"shopchat","persona":"B","recipient":"external_unknown","action":"send_screenshot"},"trigger":{"field_types":["address","phone"]},"action":"Mask","priority":7,"rationale":"delivery details are not part of a price haggle"}
{"id":"ask_shop_refund_card","scope":{"app":"shopchat","persona":"B","recipient":"external_business","action":"send_screenshot"},"trigger":{"field_types":["bank_card"]},"action":"Ask","priority":7,"rationale":"refund desks sometimes need the card tail; the buyer decides"}
{"id":"allow_shop_order_status","scope":{"app":"shopchat","recipient":"external_business","action":"send_screenshot"},"trigger":{"semantic_tags":["order_status"]},"action":"Allow","priority":4,"rationale":"order progress pages carry nothing personal"}
{"id":"mask_livehub_overlay","scope":{"app":"livehub","persona":"B","recipient":"external_unknown","action":"post_public"},"trigger":{"field_types":["phone","address","account"]},"action":"Mask","priority":8,"rationale":"stream overlays leak contact details to the whole room"}
{"id":"ask_livehub_promo_account","scope":{"app":"livehub","persona":"B","recipient":"external_business","action":"send_screenshot"},"trigger":{"field_types":["account"]},"action":"Ask","priority":6,"rationale":"sponsors verify the account, but the streamer confirms the send"}
{"id":"allow_livehub_self_replay","scope":{"app":"livehub","recipient":"self","action":"save_local"},"trigger":{"semantic_tags":["stream_stats"]},"action":"Allow","priority":4,"rationale":"own replay stats are private storage"}
{"id":"mask_payapp_balance","scope":{"app":"payapp","recipient":"external_unknown","action":"send_screenshot"},"trigger":{"field_types":["bank_card","account"]},"action":"Mask","priority":9,"rationale":"balance pages shown to strangers lose card and account digits"}
{"id":"ask_payapp_dispute","scope":{"app":"payapp","persona":"B","recipient":"external_business","action":"send_screenshot"},"trigger":{"field_types":["bank_card"]},"action":"Ask","priority":8,"rationale":"dispute agents ask for the transaction view; the owner gates it"}
{"id":"allow_payapp_self_receipt","scope":{"app":"payapp","recipient":"self","action":"save_local"},"trigger":{"field_types":["bank_card"]},"action":"Allow","priority":6,"rationale":"saving own receipts is routine bookkeeping"}
{"id":"ask_workim_cred_vendor","scope":{"app":"workim","persona":"C","recipient":"external_business","action":"send_screenshot"},"trigger":{"field_types":["credential"]},"action":"Ask","priority":8,"rationale":"vendor support may need the error panel, not the token under it"}
{"id":"mask_workim_cred_unknown","scope":{"app":"workim","persona":"C","recipient":"external_unknown","action":"send_screenshot"},"trigger":{"field_types":["credential"]},"action":"Mask","priority":8,"rationale":"tokens and passwords never leave to unknown contacts"}
{"id":"allow_workim_team_board","scope":{"app":"workim","recipient":"trusted_internal","action":"send_screenshot"},"trigger":{"semantic_tags":["task_board"]},"action":"Allow","priority":5,"rationale":"task boards are team-visible already"}
{"id":"mask_mailer_salary_forward","scope":{"app":"mailer","persona":"C","recipient":"external_unknown","action":"send_screenshot"},"trigger":{"field_types":["salary"]},"action":"Mask","priority":7,"rationale":"compensation lines stay out of forwarded mail shots"}
{"id":"ask_mailer_contract_partner","scope":{"app":"mailer","persona":"C","recipient":"external_business","action":"send_screenshot"},"trigger":{"field_types":["salary","account"]},"action":"Ask","priority":7,"rationale":"contract terms go to the counterparty only with an explicit ok"}
{"id":"allow_mailer_self_note","scope":{"app":"mailer","recipient":"self","action":"save_local"},"trigger":{"semantic_tags":["draft_page"]},"action":"Allow","priority":3,"rationale":"drafts saved to own notes stay on device"}
{"id":"ask_oa_policy_export","scope":{"app":"oa_portal","persona":"C","recipient":"external_business","action":"send_screenshot"},"trigger":{"field_types":["salary","id_number"]},"action":"Ask","priority":7,"rationale":"HR exports to auditors run through a confirmation"}
{"id":"mask_oa_roster","scope":{"app":"oa_portal","recipient":"external_unknown","action":"send_screenshot"},"trigger":{"field_types":["phone","id_number"]},"action":"Mask","priority":7,"rationale":"roster pages blank out colleague contact columns"}
{"id":"allow_oa_internal_sync","scope":{"app":"oa_portal","persona":"C","recipient":"trusted_internal","action":"sync_cloud"},"trigger":{"semantic_tags":["announcement"]},"action":"Allow","priority":4,"rationale":"company announcements are already internal-public"}
{"id":"allow_self_sensitive","scope":{"recipient":"self"},"trigger":{"field_types":["bank_card","id_number","medical","credential","salary","phone","address","account"]},"action":"Allow","priority":6,"rationale":"keeping own data for oneself is not a disclosure"}
{"id":"allow_trusted_routine","scope":{"recipient":"trusted_internal","action":"send_screenshot"},"trigger":{"semantic_tags":["routine_page"]},"action":"Allow","priority":3,"rationale":"routine screens shared inside the trust boundary pass"}
{"id":"allow_public_generic","scope":{"action":"send_screenshot"},"trigger":{"semantic_tags":["public_info"]},"action":"Allow","priority":2,"rationale":"already-public content needs no gate"}
{"id":"mask_card_unknown_generic","scope":{"recipient":"external_unknown"},"trigger":{"field_types":["bank_card"]},"action":"Mask","priority":5,"rationale":"card numbers to unknown parties are always blanked"}
{"id":"mask_id_unknown_generic","scope":{"recipient":"external_unknown"},"trigger":{"field_types":["id_number"]},"action":"Mask","priority":5,"rationale":"government ids to unknown parties are always blanked"}
{"id":"mask_contact_public_generic","scope":{"action":"post_public"},"trigger":{"field_types":["phone","address"]},"action":"Mask","priority":5,"rationale":"public posts drop reachable contact details"}
{"id":"mask_credential_external_generic","scope":{"recipient":"external_unknown"},"trigger":{"field_types":["credential","account"]},"action":"Mask","priority":5,"rationale":"secrets and account handles stay inside"}
{"id":"mask_medical_unknown_generic","scope":{"recipient":"external_unknown"},"trigger":{"field_types":["medical"]},"action":"Mask","priority":5,"rationale":"health details to strangers default to blanked"}
{"id":"mask_salary_public","scope":{"action":"post_public"},"trigger":{"field_types":["salary"]},"action":"Mask","priority":4,"rationale":"pay numbers are not for public posts"}
{"id":"mask_localizable_unknown","scope":{"recipient":"external_unknown"},"trigger":{"requires_localizable":true},"action":"Mask","priority":3,"rationale":"when the risky region is boxable, blank it rather than block the send"}
{"id":"mask_sensitive_occlusion_guard","scope":{"action":"send_screenshot"},"trigger":{"semantic_tags":["partial_view"]},"action":"Mask","priority":2,"rationale":"half-covered screens hide unknown content under the overlap"}
{"id":"ask_irreversible_export","scope":{"action":"share_external"},"trigger":{"field_types":["bank_card","id_number","medical","credential","salary"]},"action":"Ask","priority":4,"rationale":"exports cannot be recalled, so the owner confirms"}
{"id":"ask_business_card_generic","scope":{"recipient":"external_business"},"trigger":{"field_types":["bank_card"]},"action":"Ask","priority":4,"rationale":"businesses sometimes need payment proof; confirm per send"}
{"id":"ask_business_medical_generic","scope":{"recipient":"external_business"},"trigger":{"field_types":["medical"]},"action":"Ask","priority":4,"rationale":"health data to a company is consent-gated"}
)RULES";
  return text;
}

}  // namespace maskclaw
