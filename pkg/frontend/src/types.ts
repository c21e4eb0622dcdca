// Payload shapes of the registry's JSON API.

export type FacetKind =
  | "resource_type"
  | "media_type"
  | "discipline"
  | "target_group"
  | "proficiency_level";

export const FACET_KINDS: FacetKind[] = [
  "resource_type",
  "media_type",
  "discipline",
  "target_group",
  "proficiency_level",
];

export interface VocabTerm {
  id: string;
  label: string;
  parent: string | null;
  aliases: string[];
}

export type VocabularyPayload = Record<FacetKind, VocabTerm[]>;

export interface SearchHit {
  id: string;
  title: string;
  snippet: string;
  score: number;
}

export interface SearchResponse {
  total: number;
  page: number;
  page_size: number;
  hits: SearchHit[];
  facet_counts: Record<FacetKind, Record<string, number>>;
}

export interface AuthorPayload {
  name: string;
  identifier: string | null;
}

export interface ItemResponse {
  id: string;
  title: string;
  description: string;
  languages: string[];
  keywords: string[];
  license: string;
  url: string;
  date_published: string | null;
  authors: AuthorPayload[];
  communities: string[];
  collections: string[];
  classifier_labels: Record<FacetKind, { id: string; label: string }[]>;
  revision: number;
}

export interface ApiError {
  code: string;
  message: string;
  details: Record<string, unknown>;
}

export interface SubmissionResponse {
  id: string;
  state: string;
}
